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

#ifndef TORSIONX_CURVE_MODELS_HPP
#define TORSIONX_CURVE_MODELS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "torsionx/ec.hpp"
#include "torsionx/mobius.hpp"

namespace torsionx {

// Curve shapes.  Elliptic tags are double covers y^2 = q(x) with q of degree
// 3 or 4; genus-2 tags are hyperelliptic sextics.
enum class ModelTag {
    short_w,       // y^2 = x^3 + a x + b              params {a, b}
    cubic,         // y^2 = (x-u)(x-v)(x-w)            params {u, v, w}
    cubic_with0,   // y^2 = x(x-u)(x-v)(x-w)           params {u, v, w}
    even_quartic,  // y^2 = (x^2-s)(x^2-t)             params {s, t}
    even_sextic,   // y^2 = (x^2-u)(x^2-v)(x^2-w)      params {u, v, w}
    s3_sextic,     // y^2 = x^6 + t x^3 + 1            params {t}
    poonen_ct,     // y^2 = (x^3-1)(x^3-t^12)          params {t}
    sextic,        // y^2 = f(x), deg 5 or 6           params = coefficients c0..c6
};

inline bool model_is_elliptic(ModelTag t) {
    return t == ModelTag::short_w || t == ModelTag::cubic || t == ModelTag::cubic_with0 || t == ModelTag::even_quartic;
}
inline bool model_is_genus2(ModelTag t) { return !model_is_elliptic(t); }

template <class F>
struct CurveModel {
    ModelTag tag;
    std::vector<typename F::Elem> params;
};

// Right-hand side q(x) with y^2 = q(x).
template <class F>
PolyVec<F> model_rhs(const F& K, const CurveModel<F>& M) {
    auto lin = [&](typename F::Elem r) {
        PolyVec<F> p = {K.neg(r), K.one()};
        poly::normalize(K, p);
        return p;
    };
    const auto& P = M.params;
    switch (M.tag) {
        case ModelTag::short_w: {
            PolyVec<F> q = {P[1], P[0], K.zero(), K.one()};
            poly::normalize(K, q);
            return q;
        }
        case ModelTag::cubic:
            return poly::mul(K, poly::mul(K, lin(P[0]), lin(P[1])), lin(P[2]));
        case ModelTag::cubic_with0:
            return poly::mul(K, poly::xpow(K, 1), poly::mul(K, poly::mul(K, lin(P[0]), lin(P[1])), lin(P[2])));
        case ModelTag::even_quartic: {
            PolyVec<F> f1 = {K.neg(P[0]), K.zero(), K.one()}, f2 = {K.neg(P[1]), K.zero(), K.one()};
            return poly::mul(K, f1, f2);
        }
        case ModelTag::even_sextic: {
            PolyVec<F> r = poly::constant(K, K.one());
            for (int i = 0; i < 3; ++i) {
                PolyVec<F> f = {K.neg(P[(size_t)i]), K.zero(), K.one()};
                r = poly::mul(K, r, f);
            }
            return r;
        }
        case ModelTag::s3_sextic: {
            PolyVec<F> q(7, K.zero());
            q[0] = K.one();
            q[3] = P[0];
            q[6] = K.one();
            poly::normalize(K, q);
            return q;
        }
        case ModelTag::poonen_ct: {
            PolyVec<F> c1 = {K.neg(K.one()), K.zero(), K.zero(), K.one()};
            auto t12 = K.pow(P[0], 12);
            PolyVec<F> c2 = {K.neg(t12), K.zero(), K.zero(), K.one()};
            return poly::mul(K, c1, c2);
        }
        case ModelTag::sextic: {
            PolyVec<F> q(P.begin(), P.end());
            poly::normalize(K, q);
            return q;
        }
    }
    throw std::logic_error("model_rhs: unknown tag");
}

// Structural validation per shape: branch data distinct / sextic squarefree.
template <class F>
void model_validate(const F& K, const CurveModel<F>& M) {
    auto q = model_rhs(K, M);
    int d = poly::degree<F>(q);
    if (model_is_elliptic(M.tag)) {
        if (d != 3 && d != 4) throw std::domain_error("model: elliptic shape must have degree 3 or 4");
    } else {
        if (d != 5 && d != 6) throw std::domain_error("model: genus-2 shape must have degree 5 or 6");
    }
    auto g = poly::gcd(K, q, poly::derivative(K, q));
    if (poly::degree<F>(g) != 0) throw std::domain_error("model: branch values collide (rhs not squarefree)");
    if (M.tag == ModelTag::even_quartic) {
        if (K.is_zero(M.params[0]) || K.is_zero(M.params[1])) throw std::domain_error("even_quartic: s, t must be nonzero");
    }
    if (M.tag == ModelTag::even_sextic || M.tag == ModelTag::cubic_with0) {
        for (auto& p : M.params)
            if (K.is_zero(p)) throw std::domain_error("model: parameters must be nonzero");
    }
}

// Short Weierstrass normal form of an elliptic double cover with a marked
// origin branch point.  The Moebius map mu sends model x-coordinates to the
// normal form's X (origin -> infinity); points map as
//   (x, y) -> (mu(x), lambda y / (x - x0)^2)     for a finite origin x0,
//   (x, y) -> (x - shift, y)                     for origin at infinity.
template <class F>
struct SwNormalization {
    ShortW<F> E;
    Mobius<F> mu;
    typename F::Elem lambda;
    bool pole = false;  // y-scale has the (x - x0)^{-2} factor
    typename F::Elem x0{};
};

template <class F>
SwNormalization<F> to_short_weierstrass(const F& K, const CurveModel<F>& M, const P1<F>& origin) {
    if (!model_is_elliptic(M.tag)) throw std::domain_error("to_short_weierstrass: not an elliptic shape");
    auto q = model_rhs(K, M);
    int d = poly::degree<F>(q);
    auto third = K.inv(K.from_int((i64)3));
    if (p1_is_inf(K, origin)) {
        if (d != 3) throw std::domain_error("to_short_weierstrass: infinity is not a branch point of a quartic model");
        // depress: X = x + c2/3
        auto c2 = q[2];
        auto s = K.mul(c2, third);
        auto a = K.sub(q[1], K.mul(K.mul(c2, c2), third));
        // b = c0 - c1 c2/3 + 2 c2^3/27
        auto b = K.add(K.sub(q[0], K.mul(K.mul(q[1], c2), third)),
                       K.mul(K.from_int((i64)2), K.mul(K.mul(s, s), s)));
        SwNormalization<F> out;
        out.E = {a, b};
        out.mu = {K.one(), s, K.zero(), K.one()};
        out.lambda = K.one();
        return out;
    }
    auto x0 = origin.num;  // normalized P1 has den = 1
    if (!K.is_zero(poly::eval(K, q, x0))) throw std::domain_error("to_short_weierstrass: origin is not a branch point");
    // Taylor coefficients of q at x0: q(x0 + e) = q1 e + q2 e^2 + q3 e^3 + q4 e^4
    auto sh = poly::shift(K, q, x0);
    auto coef = [&](int i) { return i <= poly::degree<F>(sh) ? sh[(size_t)i] : K.zero(); };
    auto q1 = coef(1), q2 = coef(2), q3 = coef(3), q4 = coef(4);
    if (K.is_zero(q1)) throw std::domain_error("to_short_weierstrass: origin is a multiple branch point");
    // (X^2 y)^2 = q1 X^3 + q2 X^2 + q3 X + q4 with X = 1/(x - x0); after the
    // leading normalization X' = q1 X the curve is monic with c2 = q2,
    // c1 = q1 q3, c0 = q1^2 q4; then depress.
    auto c2 = q2, c1 = K.mul(q1, q3), c0 = K.mul(K.mul(q1, q1), q4);
    auto s = K.mul(c2, third);
    auto a = K.sub(c1, K.mul(K.mul(c2, c2), third));
    auto b = K.add(K.sub(c0, K.mul(K.mul(c1, c2), third)), K.mul(K.from_int((i64)2), K.mul(K.mul(s, s), s)));
    SwNormalization<F> out;
    out.E = {a, b};
    // mu(x) = q1/(x - x0) + q2/3
    out.mu = {s, K.sub(q1, K.mul(s, x0)), K.one(), K.neg(x0)};
    out.lambda = q1;
    out.pole = true;
    out.x0 = x0;
    return out;
}

// Model point (affine or the marked origin) -> point on the normal form.
template <class F>
EcPoint<F> model_point_to_sw(const F& K, const SwNormalization<F>& N, const P1<F>& origin, const P1<F>& px,
                             typename F::Elem y) {
    if (p1_is_inf(K, px)) {
        if (!p1_is_inf(K, origin)) throw std::domain_error("model_point_to_sw: non-origin point at infinity");
        return ec_infinity<F>();
    }
    auto x = px.num;
    if (N.pole && K.eq(x, N.x0)) return ec_infinity<F>();
    auto X = mobius_apply(K, N.mu, px);
    typename F::Elem Y;
    if (N.pole) {
        auto dxi = K.inv(K.sub(x, N.x0));
        Y = K.mul(K.mul(N.lambda, y), K.mul(dxi, dxi));
    } else {
        Y = K.mul(N.lambda, y);
    }
    return ec_point<F>(X.num, Y);
}

}  // namespace torsionx

#endif
