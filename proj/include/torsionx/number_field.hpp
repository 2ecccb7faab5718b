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

#ifndef TORSIONX_NUMBER_FIELD_HPP
#define TORSIONX_NUMBER_FIELD_HPP

#include <optional>

#include "torsionx/poly.hpp"
#include "torsionx/rationals.hpp"

namespace torsionx {

using QQPoly = PolyVec<RationalField>;

// Q[z]/(f) with f monic.  Elements are reduced representative polynomials
// (coefficient vectors over Q, trailing zeros stripped).  Irreducibility of
// f is the caller's responsibility; every arithmetic consequence used by the
// pipelines is re-verified modulo primes.
class NumberField {
   public:
    using Elem = std::vector<mpq_class>;

    explicit NumberField(QQPoly f) : f_(std::move(f)) {
        if (poly::degree<RationalField>(f_) < 1) throw std::invalid_argument("NumberField: constant modulus");
        if (f_.back() != 1) throw std::invalid_argument("NumberField: defining polynomial must be monic");
    }

    const QQPoly& defining_poly() const { return f_; }
    int degree() const { return poly::degree<RationalField>(f_); }

    Elem zero() const { return {}; }
    Elem one() const { return {mpq_class(1)}; }
    Elem gen() const {
        if (degree() == 1) return reduce_({mpq_class(0), mpq_class(1)});
        return {mpq_class(0), mpq_class(1)};
    }
    Elem from_int(i64 x) const { return x ? Elem{mpq_class((long)x)} : Elem{}; }
    Elem from_int(u64 x) const {
        auto q = RationalField{}.from_int(x);
        return sgn(q) ? Elem{q} : Elem{};
    }
    Elem from_rational(const mpq_class& q) const { return sgn(q) ? Elem{q} : Elem{}; }

    bool is_zero(const Elem& a) const { return a.empty(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const { return poly::add(Q_, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly::sub(Q_, a, b); }
    Elem neg(const Elem& a) const { return poly::neg(Q_, a); }
    Elem mul(const Elem& a, const Elem& b) const { return reduce_(poly::mul(Q_, a, b)); }
    Elem sqr(const Elem& a) const { return mul(a, a); }
    Elem inv(const Elem& a) const {
        if (a.empty()) throw std::domain_error("NumberField: division by zero");
        QQPoly s, t;
        auto g = poly::xgcd(Q_, a, f_, s, t);
        if (poly::degree<RationalField>(g) != 0)
            throw std::domain_error("NumberField: non-invertible element (reducible modulus?)");
        return reduce_(poly::scale(Q_, s, Q_.inv(g[0])));
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

    // Rational content when the element lies in Q.
    std::optional<mpq_class> as_rational(const Elem& a) const {
        if (a.empty()) return mpq_class(0);
        if (a.size() == 1) return a[0];
        return std::nullopt;
    }

    // Square root for elements that are squares of rationals; anything else
    // reports "extension required" (nullopt).
    std::optional<Elem> sqrt_rational(const Elem& a) const {
        auto q = as_rational(a);
        if (!q) return std::nullopt;
        if (sgn(*q) < 0) return std::nullopt;
        mpz_class n = q->get_num(), d = q->get_den(), rn, rd;
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return from_rational(mpq_class(rn) / mpq_class(rd));
    }

    // Image of an element under z -> root in F_p; nullopt when a denominator
    // or the reduction is not defined at p.
    std::optional<PrimeField::Elem> reduce_mod(const PrimeField& F, PrimeField::Elem root, const Elem& a) const {
        auto acc = F.zero();
        auto rp = F.one();
        for (const auto& c : a) {
            auto cr = reduce_rational(F, c);
            if (!cr) return std::nullopt;
            acc = F.add(acc, F.mul(*cr, rp));
            rp = F.mul(rp, root);
        }
        return acc;
    }

   private:
    RationalField Q_;
    QQPoly f_;

    Elem reduce_(QQPoly v) const { return poly::rem(Q_, v, f_); }
};

inline u64 field_characteristic(const NumberField&) { return 0; }

// Square roots inside the field are only attempted for rational squares;
// anything else needs an extension and reports nullopt.
inline std::optional<NumberField::Elem> field_sqrt(const NumberField& K, const NumberField::Elem& a) {
    return K.sqrt_rational(a);
}

}  // namespace torsionx

#endif
