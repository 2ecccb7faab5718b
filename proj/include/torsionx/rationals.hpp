/*
   Copyright 2026 The torsionx authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TORSIONX_RATIONALS_HPP
#define TORSIONX_RATIONALS_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsionx/prime_field.hpp"
#include "torsionx/util.hpp"

namespace torsionx {

// Exact rationals (GMP-backed) as a field object for the generic poly kernel.
class RationalField {
   public:
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(i64 x) const { return Elem((long)x); }
    Elem from_int(u64 x) const {
        mpz_class z;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
        return Elem(z);
    }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem sqr(const Elem& a) const { return a * a; }
    Elem inv(const Elem& a) const {
        if (sgn(a) == 0) throw std::domain_error("RationalField: division by zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return a / inv_check(b); }
    Elem pow(Elem a, u64 e) const {
        Elem r(1);
        while (e) {
            if (e & 1) r *= a;
            a *= a;
            e >>= 1;
        }
        return r;
    }

   private:
    const Elem& inv_check(const Elem& b) const {
        if (sgn(b) == 0) throw std::domain_error("RationalField: division by zero");
        return b;
    }
};

// "p/q" or "p"; throws std::invalid_argument on malformed input.
inline mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Residue of a rational mod p; denominator must be a unit.
inline std::optional<PrimeField::Elem> reduce_rational(const PrimeField& F, const mpq_class& q) {
    mpz_class den = q.get_den();
    mpz_class p(F.modulus());
    if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) return std::nullopt;
    mpz_class nr = q.get_num() % p;
    if (nr < 0) nr += p;
    mpz_class dr = den % p;
    auto n = F.from_int((u64)nr.get_ui());
    auto d = F.from_int((u64)dr.get_ui());
    return F.mul(n, F.inv(d));
}

inline u64 field_characteristic(const RationalField&) { return 0; }

inline std::optional<mpq_class> field_sqrt(const RationalField&, const mpq_class& a) {
    if (sgn(a) < 0) return std::nullopt;
    mpz_class n = a.get_num(), d = a.get_den(), rn, rd;
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(rn) / mpq_class(rd);
}

struct CrtInput {
    mpz_class residue;
    mpz_class modulus;
};

// Unique residue modulo the product of pairwise coprime moduli; names the
// offending pair when coprimality fails.
inline mpz_class crt_combine(const std::vector<CrtInput>& in, mpz_class* modulus_out = nullptr) {
    if (in.empty()) throw std::invalid_argument("crt_combine: empty input");
    mpz_class r = in[0].residue % in[0].modulus;
    if (r < 0) r += in[0].modulus;
    mpz_class m = in[0].modulus;
    for (size_t i = 1; i < in.size(); ++i) {
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), in[i].modulus.get_mpz_t());
        if (g != 1) {
            throw std::domain_error("crt_combine: moduli " + m.get_str() + " and " + in[i].modulus.get_str() +
                                    " are not coprime");
        }
        mpz_class ri = in[i].residue % in[i].modulus;
        if (ri < 0) ri += in[i].modulus;
        // r' = r + m * (s * (ri - r) mod m_i)
        mpz_class diff = (ri - r) % in[i].modulus;
        mpz_class k = (s * diff) % in[i].modulus;
        r += m * k;
        m *= in[i].modulus;
        r %= m;
        if (r < 0) r += m;
    }
    if (modulus_out) *modulus_out = m;
    return r;
}

// The unique a/b with |a|, b <= sqrt(m/2), gcd(b, m) = 1, a = b*r mod m;
// nullopt if none exists.
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& residue, const mpz_class& modulus) {
    if (modulus < 2) throw std::invalid_argument("rational_reconstruct: modulus < 2");
    mpz_class bound;
    mpz_class half = modulus / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = modulus, r1 = residue % modulus;
    if (r1 < 0) r1 += modulus;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (sgn(t1) == 0) return std::nullopt;
    mpz_class a = r1, b = t1;
    if (b < 0) {
        a = -a;
        b = -b;
    }
    if (b > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), modulus.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g != 1) return std::nullopt;
    return mpq_class(a) / mpq_class(b);
}

}  // namespace torsionx

#endif
