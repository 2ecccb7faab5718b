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

#ifndef TORSIONX_EC_HPP
#define TORSIONX_EC_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "torsionx/poly.hpp"

namespace torsionx {

// y^2 = x^3 + a x + b (nonsingular: 4a^3 + 27b^2 != 0)
template <class F>
struct ShortW {
    typename F::Elem a, b;
};

template <class F>
struct EcPoint {
    typename F::Elem x{}, y{};
    bool inf = true;
};

template <class F>
EcPoint<F> ec_infinity() {
    return {};
}

template <class F>
EcPoint<F> ec_point(typename F::Elem x, typename F::Elem y) {
    return {x, y, false};
}

template <class F>
typename F::Elem ec_rhs(const F& K, const ShortW<F>& E, typename F::Elem x) {
    return K.add(K.mul(x, K.add(K.mul(x, x), E.a)), E.b);
}

template <class F>
typename F::Elem ec_disc(const F& K, const ShortW<F>& E) {
    auto a3 = K.mul(K.from_int((i64)4), K.mul(E.a, K.mul(E.a, E.a)));
    auto b2 = K.mul(K.from_int((i64)27), K.mul(E.b, E.b));
    return K.add(a3, b2);
}

template <class F>
typename F::Elem ec_j_invariant(const F& K, const ShortW<F>& E) {
    auto a3 = K.mul(K.from_int((i64)4), K.mul(E.a, K.mul(E.a, E.a)));
    auto num = K.mul(K.from_int((i64)1728), a3);
    auto den = K.add(a3, K.mul(K.from_int((i64)27), K.mul(E.b, E.b)));
    return K.div(num, den);
}

template <class F>
bool ec_on_curve(const F& K, const ShortW<F>& E, const EcPoint<F>& P) {
    if (P.inf) return true;
    return K.eq(K.mul(P.y, P.y), ec_rhs(K, E, P.x));
}

template <class F>
EcPoint<F> ec_neg(const F& K, const EcPoint<F>& P) {
    if (P.inf) return P;
    return {P.x, K.neg(P.y), false};
}

template <class F>
bool ec_eq(const F& K, const EcPoint<F>& P, const EcPoint<F>& Q) {
    if (P.inf || Q.inf) return P.inf == Q.inf;
    return K.eq(P.x, Q.x) && K.eq(P.y, Q.y);
}

template <class F>
EcPoint<F> ec_add(const F& K, const ShortW<F>& E, const EcPoint<F>& P, const EcPoint<F>& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    typename F::Elem lam;
    if (K.eq(P.x, Q.x)) {
        if (!K.eq(P.y, Q.y) || K.is_zero(P.y)) return ec_infinity<F>();
        auto num = K.add(K.mul(K.from_int((i64)3), K.mul(P.x, P.x)), E.a);
        lam = K.div(num, K.add(P.y, P.y));
    } else {
        lam = K.div(K.sub(Q.y, P.y), K.sub(Q.x, P.x));
    }
    auto x3 = K.sub(K.sub(K.mul(lam, lam), P.x), Q.x);
    auto y3 = K.sub(K.mul(lam, K.sub(P.x, x3)), P.y);
    return {x3, y3, false};
}

template <class F>
EcPoint<F> ec_mul(const F& K, const ShortW<F>& E, EcPoint<F> P, u64 n) {
    EcPoint<F> R = ec_infinity<F>();
    while (n) {
        if (n & 1) R = ec_add(K, E, R, P);
        P = ec_add(K, E, P, P);
        n >>= 1;
    }
    return R;
}

inline std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    std::vector<std::pair<u64, int>> fs;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            fs.emplace_back(d, e);
        }
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

// Exact order when it divides N; nullopt otherwise.
template <class F>
std::optional<u64> ec_order_bounded(const F& K, const ShortW<F>& E, const EcPoint<F>& P, u64 N) {
    if (P.inf) return 1;
    if (!ec_mul(K, E, P, N).inf) return std::nullopt;
    u64 ord = N;
    for (auto [q, e] : factor_u64(N)) {
        (void)e;
        while (ord % q == 0 && ec_mul(K, E, P, ord / q).inf) ord /= q;
    }
    return ord;
}

// ---------------------------------------------------------------------------
// Division polynomials, y^2 eliminated.
//
// With psi_n the standard division polynomial of y^2 = x^3 + a x + b, the
// table stores x-polynomials f_n where psi_n = f_n for n odd and
// psi_n = (2y) f_n for n even.  The recurrences below are division-free:
//   f_{2m+1} = (4F)^2 f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3   (m even)
//   f_{2m+1} = f_{m+2} f_m^3 - (4F)^2 f_{m-1} f_{m+1}^3   (m odd)
//   f_{2m}   = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)
// where F = x^3 + a x + b.
// ---------------------------------------------------------------------------

// Seeds for the f-table over any commutative ring whose elements are
// polynomials in x; `Ring` supplies add/sub/mul on those and the caller
// provides the coefficient-level values a, b embedded as constants.
template <class Ring>
struct DivpolySeeds {
    typename Ring::P f3, f4, F4sq;  // psi_3, psi_4/(2y), (4(x^3+ax+b))^2
};

template <class Ring>
std::vector<typename Ring::P> divpoly_ftable(const Ring& R, const DivpolySeeds<Ring>& seeds, int N) {
    using P = typename Ring::P;
    std::vector<P> f((size_t)std::max(N + 1, 5));
    f[0] = R.zero();
    f[1] = R.one_elem();
    f[2] = R.one_elem();
    f[3] = seeds.f3;
    f[4] = seeds.f4;
    for (int n = 5; n <= N; ++n) {
        if (n & 1) {
            int m = n / 2;
            auto t1 = R.mul(f[(size_t)m + 2], R.mul(f[(size_t)m], R.mul(f[(size_t)m], f[(size_t)m])));
            auto t2 = R.mul(f[(size_t)m - 1], R.mul(f[(size_t)m + 1], R.mul(f[(size_t)m + 1], f[(size_t)m + 1])));
            if (m % 2 == 0)
                f[(size_t)n] = R.sub(R.mul(seeds.F4sq, t1), t2);
            else
                f[(size_t)n] = R.sub(t1, R.mul(seeds.F4sq, t2));
        } else {
            int m = n / 2;
            auto s1 = R.mul(f[(size_t)m + 2], R.mul(f[(size_t)m - 1], f[(size_t)m - 1]));
            auto s2 = R.mul(f[(size_t)m - 2], R.mul(f[(size_t)m + 1], f[(size_t)m + 1]));
            f[(size_t)n] = R.mul(f[(size_t)m], R.sub(s1, s2));
        }
    }
    f.resize((size_t)N + 1);
    return f;
}

// Univariate instantiation over a field.
template <class F>
struct UniRing {
    const F* K;
    using P = PolyVec<F>;
    P zero() const { return {}; }
    P one_elem() const { return poly::constant(*K, K->one()); }
    P add(const P& x, const P& y) const { return poly::add(*K, x, y); }
    P sub(const P& x, const P& y) const { return poly::sub(*K, x, y); }
    P mul(const P& x, const P& y) const { return poly::mul(*K, x, y); }
};

template <class F>
DivpolySeeds<UniRing<F>> divpoly_seeds(const F& K, const ShortW<F>& E) {
    auto a = E.a, b = E.b;
    auto i = [&](i64 v) { return K.from_int(v); };
    PolyVec<F> f3 = {K.neg(K.mul(a, a)), K.mul(i(12), b), K.mul(i(6), a), K.zero(), i(3)};
    poly::normalize(K, f3);
    // f4 = 2 (x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
    PolyVec<F> f4 = {K.sub(K.mul(i(-8), K.mul(b, b)), K.mul(a, K.mul(a, a))),
                     K.mul(i(-4), K.mul(a, b)),
                     K.mul(i(-5), K.mul(a, a)),
                     K.mul(i(20), b),
                     K.mul(i(5), a),
                     K.zero(),
                     K.one()};
    poly::normalize(K, f4);
    for (auto& c : f4) c = K.mul(c, i(2));
    PolyVec<F> F4 = {K.mul(i(4), b), K.mul(i(4), a), K.zero(), i(4)};
    poly::normalize(K, F4);
    UniRing<F> R{&K};
    return {f3, f4, R.mul(F4, F4)};
}

// Table of f_n for n = 0..N on a short Weierstrass curve.
template <class F>
std::vector<PolyVec<F>> divpoly_table(const F& K, const ShortW<F>& E, int N) {
    if (N < 1) throw std::invalid_argument("divpoly_table: N >= 1 required");
    UniRing<F> R{&K};
    return divpoly_ftable(R, divpoly_seeds(K, E), std::max(N, 4));
}

// Squarefree monic polynomial whose roots are the x-coordinates of the
// affine points P != O with N P = O.  (On a short Weierstrass model no
// non-origin point sits over x = infinity.)
template <class F>
PolyVec<F> torsion_x_div(const F& K, const ShortW<F>& E, const std::vector<PolyVec<F>>& ftab, int N) {
    if (N < 1) throw std::invalid_argument("torsion_x_div: N >= 1");
    if (N == 1) return poly::constant(K, K.one());
    PolyVec<F> part = ftab[(size_t)N];
    if (N % 2 == 0) {
        PolyVec<F> two = {E.b, E.a, K.zero(), K.one()};
        poly::normalize(K, two);
        part = poly::mul(K, part, two);
    }
    if (part.empty()) throw std::domain_error("torsion_x_div: vanishing division polynomial (bad characteristic?)");
    return poly::squarefree_part(K, part);
}

// x(nP) as a rational map num/den in x(P).
template <class F>
std::pair<PolyVec<F>, PolyVec<F>> x_mult_map(const F& K, const ShortW<F>& E, const std::vector<PolyVec<F>>& ftab,
                                             int n) {
    PolyVec<F> F4 = {K.mul(K.from_int((i64)4), E.b), K.mul(K.from_int((i64)4), E.a), K.zero(), K.from_int((i64)4)};
    poly::normalize(K, F4);
    auto fn2 = poly::mul(K, ftab[(size_t)n], ftab[(size_t)n]);
    auto prod = poly::mul(K, ftab[(size_t)n - 1], ftab[(size_t)n + 1]);
    PolyVec<F> num, den;
    auto x = poly::xpow(K, 1);
    if (n & 1) {
        num = poly::sub(K, poly::mul(K, x, fn2), poly::mul(K, F4, prod));
        den = fn2;
    } else {
        auto f4fn2 = poly::mul(K, F4, fn2);
        num = poly::sub(K, poly::mul(K, x, f4fn2), prod);
        den = f4fn2;
    }
    return {num, den};
}

// Monic polynomial in x(Q) cutting out [2]Q = R: degree 4 for affine R,
// degree 3 for R = O (the fourth halving sits over infinity).
template <class F>
PolyVec<F> halving_poly(const F& K, const ShortW<F>& E, const std::optional<typename F::Elem>& xR) {
    auto a = E.a, b = E.b;
    if (!xR) {
        PolyVec<F> r = {b, a, K.zero(), K.one()};
        poly::normalize(K, r);
        return r;
    }
    auto i4 = K.from_int((i64)4);
    PolyVec<F> H = {K.sub(K.mul(a, a), K.mul(i4, K.mul(b, *xR))),
                    K.neg(K.add(K.mul(K.from_int((i64)8), b), K.mul(i4, K.mul(a, *xR)))),
                    K.mul(K.from_int((i64)-2), a), K.mul(K.from_int((i64)-4), *xR), K.one()};
    poly::normalize(K, H);
    return H;
}

// Velu quotient by the cyclic group generated by a point of exact odd prime
// order ell.  Normalized so the x-map is x + O(1/x).
template <class F>
struct VeluIsogeny {
    ShortW<F> image;
    PolyVec<F> num, den;  // X = num/den, den = prod (x - x_i)^2
    std::vector<typename F::Elem> kernel_x;
};

template <class F>
VeluIsogeny<F> velu_isogeny(const F& K, const ShortW<F>& E, const EcPoint<F>& S, u64 ell) {
    if (ell < 3 || !(ell & 1)) throw std::invalid_argument("velu_isogeny: need odd prime ell >= 3");
    if (S.inf || !ec_on_curve(K, E, S)) throw std::invalid_argument("velu_isogeny: kernel generator not on curve");
    if (!ec_mul(K, E, S, ell).inf) throw std::invalid_argument("velu_isogeny: generator order does not divide ell");
    // ell prime and S != O => exact order ell
    VeluIsogeny<F> out;
    auto P = S;
    std::vector<typename F::Elem> xs;
    for (u64 i = 1; i <= (ell - 1) / 2; ++i) {
        xs.push_back(P.x);
        P = ec_add(K, E, P, S);
    }
    auto v = K.zero(), w = K.zero();
    std::vector<typename F::Elem> vi, ui;
    for (auto& x : xs) {
        auto gx = K.add(K.mul(K.from_int((i64)3), K.mul(x, x)), E.a);
        auto u = K.mul(K.from_int((i64)4), ec_rhs(K, E, x));
        auto vv = K.add(gx, gx);
        vi.push_back(vv);
        ui.push_back(u);
        v = K.add(v, vv);
        w = K.add(w, K.add(u, K.mul(x, vv)));
    }
    out.image = {K.sub(E.a, K.mul(K.from_int((i64)5), v)), K.sub(E.b, K.mul(K.from_int((i64)7), w))};
    // X = x + sum v_i/(x-x_i) + u_i/(x-x_i)^2 over the common denominator
    PolyVec<F> D = poly::constant(K, K.one());
    for (auto& x : xs) D = poly::mul(K, D, PolyVec<F>{K.neg(x), K.one()});
    auto D2 = poly::mul(K, D, D);
    PolyVec<F> N = poly::mul(K, poly::xpow(K, 1), D2);
    for (size_t i = 0; i < xs.size(); ++i) {
        auto Di = poly::quot(K, D, PolyVec<F>{K.neg(xs[i]), K.one()});
        auto Di2 = poly::mul(K, Di, Di);
        PolyVec<F> lin = {K.sub(ui[i], K.mul(vi[i], xs[i])), vi[i]};
        poly::normalize(K, lin);
        N = poly::add(K, N, poly::mul(K, Di2, lin));
    }
    out.num = N;
    out.den = D2;
    out.kernel_x = xs;
    return out;
}

// Evaluate the isogeny at a point (kernel points land on O); the y-image is
// y * X'(x) since the isogeny is normalized.
template <class F>
EcPoint<F> velu_apply(const F& K, const VeluIsogeny<F>& phi, const EcPoint<F>& P) {
    if (P.inf) return P;
    auto den = poly::eval(K, phi.den, P.x);
    if (K.is_zero(den)) return ec_infinity<F>();
    auto num = poly::eval(K, phi.num, P.x);
    auto X = K.div(num, den);
    auto dn = poly::eval(K, poly::derivative(K, phi.num), P.x);
    auto dd = poly::eval(K, poly::derivative(K, phi.den), P.x);
    auto Xp = K.div(K.sub(K.mul(dn, den), K.mul(num, dd)), K.mul(den, den));
    return {X, K.mul(P.y, Xp), false};
}

}  // namespace torsionx

#endif
