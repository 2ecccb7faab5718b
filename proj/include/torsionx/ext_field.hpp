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

#ifndef TORSIONX_EXT_FIELD_HPP
#define TORSIONX_EXT_FIELD_HPP

#include <gmpxx.h>

#include <optional>

#include "torsionx/poly.hpp"
#include "torsionx/prime_field.hpp"

namespace torsionx {

// F_p[z]/(g) with g monic irreducible (verified on construction).  Elements
// are reduced coefficient vectors in Montgomery form.  Small degrees only;
// this backs point-order bookkeeping above non-rational x-values and the
// exhaustive F_{p^2} oracles in the test suite.
class ExtField {
   public:
    using Elem = std::vector<u64>;

    ExtField(const PrimeField& base, PolyVec<PrimeField> g, bool check_irreducible = true)
        : F_(&base), g_(std::move(g)) {
        if (poly::degree<PrimeField>(g_) < 1) throw std::invalid_argument("ExtField: constant modulus");
        g_ = poly::monic(*F_, g_);
        if (check_irreducible && !is_irreducible(*F_, g_)) throw std::invalid_argument("ExtField: reducible modulus");
    }

    const PrimeField& base() const { return *F_; }
    const PolyVec<PrimeField>& modulus_poly() const { return g_; }
    int ext_degree() const { return poly::degree<PrimeField>(g_); }
    u64 characteristic() const { return F_->modulus(); }
    mpz_class cardinality() const {
        mpz_class q(F_->modulus());
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), (unsigned long)ext_degree());
        return r;
    }

    Elem zero() const { return {}; }
    Elem one() const { return {F_->one()}; }
    Elem gen() const { return ext_degree() == 1 ? reduce_({F_->zero(), F_->one()}) : Elem{F_->zero(), F_->one()}; }
    Elem from_int(i64 x) const { return embed(F_->from_int(x)); }
    Elem from_int(u64 x) const { return embed(F_->from_int(x)); }
    Elem embed(PrimeField::Elem a) const { return F_->is_zero(a) ? Elem{} : Elem{a}; }

    bool is_zero(const Elem& a) const { return a.empty(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const { return poly::add(*F_, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly::sub(*F_, a, b); }
    Elem neg(const Elem& a) const { return poly::neg(*F_, a); }
    Elem mul(const Elem& a, const Elem& b) const { return reduce_(poly::mul(*F_, a, b)); }
    Elem sqr(const Elem& a) const { return mul(a, a); }
    Elem inv(const Elem& a) const {
        if (a.empty()) throw std::domain_error("ExtField: division by zero");
        PolyVec<PrimeField> s, t;
        auto g = poly::xgcd(*F_, a, g_, s, t);
        if (poly::degree<PrimeField>(g) != 0) throw std::domain_error("ExtField: non-invertible element");
        return reduce_(poly::scale(*F_, s, F_->inv(g[0])));
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, u64 e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = sqr(a);
            e >>= 1;
        }
        return r;
    }

    Elem pow_mpz(Elem a, const mpz_class& e) const {
        Elem r = one();
        size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            r = sqr(r);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
        }
        return r;
    }

    bool is_square(const Elem& a) const {
        if (a.empty()) return true;
        mpz_class e = (cardinality() - 1) / 2;
        return eq(pow_mpz(a, e), one());
    }

    // Tonelli-Shanks over F_q.
    std::optional<Elem> sqrt(const Elem& a) const {
        if (a.empty()) return Elem{};
        if (!is_square(a)) return std::nullopt;
        mpz_class q1 = cardinality() - 1;
        mpz_class q = q1;
        int s = 0;
        while (mpz_even_p(q.get_mpz_t())) {
            q >>= 1;
            ++s;
        }
        // deterministic non-square search: z, z + 1, ...
        Elem z = add(gen(), one());
        while (is_square(z)) z = add(z, one());
        Elem c = pow_mpz(z, q);
        Elem x = pow_mpz(a, (q + 1) / 2);
        Elem t = pow_mpz(a, q);
        int m = s;
        while (!eq(t, one())) {
            Elem tt = t;
            int i = 0;
            while (!eq(tt, one())) {
                tt = sqr(tt);
                if (++i == m) return std::nullopt;
            }
            Elem b = c;
            for (int j = 0; j < m - i - 1; ++j) b = sqr(b);
            m = i;
            c = sqr(b);
            t = mul(t, c);
            x = mul(x, b);
        }
        return x;
    }

    // x^{p^k} mod f over F_p via iterated p-power maps.
    static PolyVec<PrimeField> frobenius_pow(const PrimeField& F, const PolyVec<PrimeField>& f, int k) {
        auto h = poly::xpow(F, 1);
        for (int i = 0; i < k; ++i) h = poly::powmod(F, h, F.modulus(), f);
        return h;
    }

    // Irreducibility over F_p: x^{p^d} = x mod g and gcd conditions at the
    // maximal proper divisors of d.
    static bool is_irreducible(const PrimeField& F, const PolyVec<PrimeField>& g) {
        int d = poly::degree<PrimeField>(g);
        if (d < 1) return false;
        if (d == 1) return true;
        auto x = poly::xpow(F, 1);
        auto h = frobenius_pow(F, g, d);
        if (!poly::eq(F, h, poly::rem(F, x, g))) return false;
        for (int q = 2; q <= d; ++q) {
            if (d % q) continue;
            bool isprime = true;
            for (int r = 2; r * r <= q; ++r)
                if (q % r == 0) isprime = false;
            if (!isprime) continue;
            auto hq = frobenius_pow(F, g, d / q);
            auto diff = poly::sub(F, hq, x);
            if (poly::degree<PrimeField>(poly::gcd(F, diff, g)) != 0) return false;
        }
        return true;
    }

   private:
    const PrimeField* F_;
    PolyVec<PrimeField> g_;

    Elem reduce_(PolyVec<PrimeField> v) const { return poly::rem(*F_, v, g_); }
};

inline std::optional<ExtField::Elem> field_sqrt(const ExtField& K, const ExtField::Elem& a) { return K.sqrt(a); }

inline u64 field_characteristic(const ExtField& K) { return K.characteristic(); }

}  // namespace torsionx

#endif
