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

#ifndef TORSIONX_MOBIUS_HPP
#define TORSIONX_MOBIUS_HPP

#include <array>
#include <stdexcept>

#include "torsionx/poly.hpp"

namespace torsionx {

// Point of P^1: canonical form is (x : 1) for affine x and (1 : 0) for the
// point at infinity.
template <class F>
struct P1 {
    typename F::Elem num, den;
};

template <class F>
P1<F> p1_affine(const F& K, typename F::Elem x) {
    return {x, K.one()};
}

template <class F>
P1<F> p1_inf(const F& K) {
    return {K.one(), K.zero()};
}

template <class F>
bool p1_is_inf(const F& K, const P1<F>& p) {
    return K.is_zero(p.den);
}

template <class F>
P1<F> p1_normalize(const F& K, typename F::Elem num, typename F::Elem den) {
    if (K.is_zero(den)) {
        if (K.is_zero(num)) throw std::domain_error("P1: (0:0)");
        return p1_inf(K);
    }
    return {K.div(num, den), K.one()};
}

template <class F>
bool p1_eq(const F& K, const P1<F>& p, const P1<F>& q) {
    // cross-multiplication, no division
    return K.eq(K.mul(p.num, q.den), K.mul(q.num, p.den));
}

// x -> (a x + b) / (c x + d), stored up to scalar; det must be nonzero.
template <class F>
struct Mobius {
    typename F::Elem a, b, c, d;
};

template <class F>
typename F::Elem mobius_det(const F& K, const Mobius<F>& m) {
    return K.sub(K.mul(m.a, m.d), K.mul(m.b, m.c));
}

template <class F>
Mobius<F> mobius_identity(const F& K) {
    return {K.one(), K.zero(), K.zero(), K.one()};
}

template <class F>
Mobius<F> mobius_neg_x(const F& K) {
    return {K.neg(K.one()), K.zero(), K.zero(), K.one()};
}

template <class F>
P1<F> mobius_apply(const F& K, const Mobius<F>& m, const P1<F>& p) {
    auto num = K.add(K.mul(m.a, p.num), K.mul(m.b, p.den));
    auto den = K.add(K.mul(m.c, p.num), K.mul(m.d, p.den));
    return p1_normalize(K, num, den);
}

// m1 then m2? No: composition (m1 ∘ m2)(x) = m1(m2(x)); matrix product m1*m2.
template <class F>
Mobius<F> mobius_compose(const F& K, const Mobius<F>& m1, const Mobius<F>& m2) {
    return {K.add(K.mul(m1.a, m2.a), K.mul(m1.b, m2.c)), K.add(K.mul(m1.a, m2.b), K.mul(m1.b, m2.d)),
            K.add(K.mul(m1.c, m2.a), K.mul(m1.d, m2.c)), K.add(K.mul(m1.c, m2.b), K.mul(m1.d, m2.d))};
}

template <class F>
Mobius<F> mobius_inverse(const F& K, const Mobius<F>& m) {
    if (K.is_zero(mobius_det(K, m))) throw std::domain_error("Mobius: singular matrix");
    return {m.d, K.neg(m.b), K.neg(m.c), m.a};
}

// Equality in PGL(2): cross-multiplied entries.
template <class F>
bool mobius_eq_proj(const F& K, const Mobius<F>& m, const Mobius<F>& n) {
    std::array<typename F::Elem, 4> u{m.a, m.b, m.c, m.d}, v{n.a, n.b, n.c, n.d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!K.eq(K.mul(u[(size_t)i], v[(size_t)j]), K.mul(u[(size_t)j], v[(size_t)i]))) return false;
    return true;
}

// Unique Moebius with p_i -> q_i for three distinct sources and three
// distinct targets.  Built as N^{-1} ∘ T with T, N the maps sending the
// triples to (0, 1, infinity).
template <class F>
Mobius<F> mobius_three_points(const F& K, const std::array<P1<F>, 3>& src, const std::array<P1<F>, 3>& dst) {
    auto to01inf = [&](const std::array<P1<F>, 3>& z) -> Mobius<F> {
        auto x1 = z[0].num, y1 = z[0].den;
        auto x2 = z[1].num, y2 = z[1].den;
        auto x3 = z[2].num, y3 = z[2].den;
        auto k23 = K.sub(K.mul(x2, y3), K.mul(x3, y2));
        auto k21 = K.sub(K.mul(x2, y1), K.mul(x1, y2));
        Mobius<F> m{K.mul(k23, y1), K.neg(K.mul(k23, x1)), K.mul(k21, y3), K.neg(K.mul(k21, x3))};
        if (K.is_zero(mobius_det(K, m))) throw std::domain_error("mobius_three_points: degenerate triple");
        return m;
    };
    auto T = to01inf(src);
    auto N = to01inf(dst);
    return mobius_compose(K, mobius_inverse(K, N), T);
}

// Transport of a squarefree root set through a Moebius map: the returned
// polynomial has roots mu^{-1}(roots of P); the boolean reports whether a
// root of P sits at mu(infinity) (that preimage is the point at infinity and
// leaves the affine polynomial).
template <class F>
std::pair<PolyVec<F>, bool> mobius_pullback_roots(const F& K, const PolyVec<F>& P, const Mobius<F>& mu) {
    if (P.empty()) return {P, false};
    auto Q = poly::transport(K, P, mu.a, mu.b, mu.c, mu.d);
    bool lost = false;
    if (!K.is_zero(mu.c)) {
        auto at_inf = K.div(mu.a, mu.c);
        lost = K.is_zero(poly::eval(K, P, at_inf));
    }
    return {poly::monic(K, Q), lost};
}

}  // namespace torsionx

#endif
