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

#ifndef TORSIONX_CROSSCHECK_HPP
#define TORSIONX_CROSSCHECK_HPP

#include "torsionx/covers.hpp"
#include "torsionx/factor.hpp"

namespace torsionx {

// E_s : y^2 = (x^2 - s^2)(x^2 - 1/s^2) with origin (s, 0).
template <class F>
DoubleCover<F> es_cover(const F& K, typename F::Elem s) {
    auto s2 = K.mul(s, s);
    auto is2 = K.inv(s2);
    CurveModel<F> m{ModelTag::even_quartic, {s2, is2}};
    auto si = K.inv(s);
    std::array<P1<F>, 4> br = {p1_affine(K, s), p1_affine(K, K.neg(s)), p1_affine(K, si), p1_affine(K, K.neg(si))};
    return make_cover(K, m, br, 0);
}

// psi : E_s -> E'_s, (x, y) -> ((x^2+1)^2/(4x^2), (x^4-1) y / (8x^3)), with
// E'_s : y^2 = x(x-1)(x-c), c = (s^2+1)^2/(4s^2); independent of s and
// annihilating exactly E_s[2] (the four branch points land on the origin
// (c, 0) of E'_s).
template <class F>
std::pair<typename F::Elem, typename F::Elem> poonen_psi(const F& K, typename F::Elem x, typename F::Elem y) {
    auto x2 = K.mul(x, x);
    auto num = K.add(x2, K.one());
    auto X = K.div(K.mul(num, num), K.mul(K.from_int((i64)4), x2));
    auto Y = K.div(K.mul(K.sub(K.mul(x2, x2), K.one()), y), K.mul(K.from_int((i64)8), K.mul(x2, x)));
    return {X, Y};
}

// Scaling isomorphism (x, y) -> (c^2 x, c^3 y) between short Weierstrass
// curves; c^2 is determined by the coefficients (the sign of c is the only
// freedom, which is exactly the Velu post-composition ambiguity).
template <class F>
std::optional<typename F::Elem> iso_scale_sq(const F& K, const ShortW<F>& from, const ShortW<F>& to) {
    if (K.is_zero(from.a) || K.is_zero(from.b) || K.is_zero(to.a) || K.is_zero(to.b)) return std::nullopt;
    auto c2 = K.div(K.mul(to.b, from.a), K.mul(from.b, to.a));
    if (!K.eq(K.mul(K.pow(c2, 2), from.a), to.a)) return std::nullopt;
    if (!K.eq(K.mul(K.pow(c2, 3), from.b), to.b)) return std::nullopt;
    return c2;
}

struct CrosscheckStatus {
    enum Code { ok, degenerate, sign_unresolved, mismatch } code = ok;
    std::string detail;
};

template <class F>
struct CrosscheckVerdict {
    CrosscheckStatus status;
    bool quartics_equal = false;
    bool pairing_swapped = false;       // which sign pairing matched
    PolyVec<F> h1_plus, h1_minus;       // transported monic halving quartics, side 1
    PolyVec<F> h2_plus, h2_minus;       // side 2
};

namespace detail {

// 3-isogeny E_from/<S> followed by the scaling isomorphism onto E_to;
// sign in {+1, -1} picks the square root of c^2.
template <class F>
struct ThreeIsogeny {
    VeluIsogeny<F> velu;
    typename F::Elem c2, c;  // iso scaling onto the target
};

template <class F>
std::optional<ThreeIsogeny<F>> three_isogeny_onto(const F& K, const ShortW<F>& from, const EcPoint<F>& S,
                                                  const ShortW<F>& to) {
    ThreeIsogeny<F> out;
    out.velu = velu_isogeny(K, from, S, 3);
    auto c2 = iso_scale_sq(K, out.velu.image, to);
    if (!c2) return std::nullopt;
    auto c = field_sqrt(K, *c2);
    if (!c) return std::nullopt;
    out.c2 = *c2;
    out.c = *c;
    return out;
}

template <class F>
EcPoint<F> apply_three_isogeny(const F& K, const ThreeIsogeny<F>& phi, const EcPoint<F>& P, int sign) {
    auto Q = velu_apply(K, phi.velu, P);
    if (Q.inf) return Q;
    auto c = (sign >= 0) ? phi.c : K.neg(phi.c);
    return ec_point<F>(K.mul(phi.c2, Q.x), K.mul(K.mul(phi.c2, c), Q.y));
}

// Halving quartic of [2]^{-1} R transported to the model x-coordinate of the
// cover; degree drops by one for each preimage over model infinity.
template <class F>
PolyVec<F> transported_halving(const F& K, const SwNormalization<F>& N, const EcPoint<F>& R) {
    auto H = halving_poly(K, N.E, R.inf ? std::nullopt : std::optional<typename F::Elem>(R.x));
    auto [Q, lost] = mobius_pullback_roots(K, H, N.mu);
    (void)lost;
    return Q;
}

}  // namespace detail

// The eight-further-points identity: for P_1 on E_{s_1} and P_2 on E_{s_2} with
// the same x-coordinate (and the curves linked by common 3-torsion x), the
// x-coordinates of [2]^{-1}(-P_1 ± phi_21(P_2)) and [2]^{-1}(-P_2 ± phi_12(P_1))
// agree.  The comparison is coefficient-wise on monic transported quartics;
// the Velu sign ambiguity makes the ± labels match either directly or
// swapped, and the verdict records which.
template <class F>
CrosscheckVerdict<F> halving_crosscheck(const F& K, typename F::Elem s1, typename F::Elem s2,
                                       typename F::Elem xP, typename F::Elem yP1, typename F::Elem yP2) {
    CrosscheckVerdict<F> out;
    auto c1 = es_cover(K, s1);
    auto c2 = es_cover(K, s2);
    auto n1 = to_short_weierstrass(K, c1.model, c1.branch[0]);
    auto n2 = to_short_weierstrass(K, c2.model, c2.branch[0]);

    // common 3-torsion x (precondition)
    CoverTorsion<F> t1(K, c1, 3), t2(K, c2, 3);
    auto [h1, i1] = t1.raw_level(3);
    auto [h2, i2] = t2.raw_level(3);
    (void)i1;
    (void)i2;
    auto g = poly::gcd(K, h1, h2);
    if (poly::degree<F>(g) < 1) {
        out.status = {CrosscheckStatus::degenerate, "no common 3-torsion x-coordinate"};
        return out;
    }
    // pick a rational common 3-torsion x with rational points above it on
    // both curves
    auto q1 = model_rhs(K, c1.model);
    auto q2 = model_rhs(K, c2.model);
    std::optional<typename F::Elem> xi;
    typename F::Elem e1{}, e2{};
    for (u64 r : fpoly::roots(K, g, 0x5ec5)) {
        auto x = K.from_int(r);
        auto y1 = field_sqrt(K, poly::eval(K, q1, x));
        auto y2 = field_sqrt(K, poly::eval(K, q2, x));
        if (y1 && y2) {
            xi = x;
            e1 = *y1;
            e2 = *y2;
            break;
        }
    }
    if (!xi) {
        out.status = {CrosscheckStatus::degenerate, "no rational common 3-torsion point over this prime"};
        return out;
    }
    auto S1 = model_point_to_sw(K, n1, c1.branch[0], p1_affine(K, *xi), e1);
    auto S2 = model_point_to_sw(K, n2, c2.branch[0], p1_affine(K, *xi), e2);
    if (!ec_order_bounded(K, n1.E, S1, 3) || !ec_order_bounded(K, n2.E, S2, 3) || S1.inf || S2.inf) {
        out.status = {CrosscheckStatus::degenerate, "selected points are not of order 3"};
        return out;
    }

    // phi_21 : E_{s2} -> E_{s1} with kernel <S2>; phi_12 the other way
    auto phi21 = detail::three_isogeny_onto(K, n2.E, S2, n1.E);
    auto phi12 = detail::three_isogeny_onto(K, n1.E, S1, n2.E);
    if (!phi21 || !phi12) {
        out.status = {CrosscheckStatus::degenerate, "quotient not isomorphic to partner curve (degenerate instance)"};
        return out;
    }

    auto P1 = model_point_to_sw(K, n1, c1.branch[0], p1_affine(K, xP), yP1);
    auto P2 = model_point_to_sw(K, n2, c2.branch[0], p1_affine(K, xP), yP2);
    if (!ec_on_curve(K, n1.E, P1) || !ec_on_curve(K, n2.E, P2)) {
        out.status = {CrosscheckStatus::degenerate, "P_j not on the curves"};
        return out;
    }

    auto D1 = detail::apply_three_isogeny(K, *phi21, P2, +1);
    auto W1p = ec_add(K, n1.E, ec_neg(K, P1), D1);
    auto W1m = ec_add(K, n1.E, ec_neg(K, P1), ec_neg(K, D1));
    out.h1_plus = detail::transported_halving(K, n1, W1p);
    out.h1_minus = detail::transported_halving(K, n1, W1m);

    auto D2 = detail::apply_three_isogeny(K, *phi12, P1, +1);
    auto W2p = ec_add(K, n2.E, ec_neg(K, P2), D2);
    auto W2m = ec_add(K, n2.E, ec_neg(K, P2), ec_neg(K, D2));
    out.h2_plus = detail::transported_halving(K, n2, W2p);
    out.h2_minus = detail::transported_halving(K, n2, W2m);

    bool direct = poly::eq(K, out.h1_plus, out.h2_plus) && poly::eq(K, out.h1_minus, out.h2_minus);
    bool swapped = poly::eq(K, out.h1_plus, out.h2_minus) && poly::eq(K, out.h1_minus, out.h2_plus);
    if (direct || swapped) {
        out.quartics_equal = true;
        out.pairing_swapped = swapped && !direct;
        out.status = {CrosscheckStatus::ok, ""};
    } else {
        out.status = {CrosscheckStatus::mismatch, "halving quartics differ"};
    }
    return out;
}

// Instance generator following the stated search procedure: pick s_1, pick a
// 3-torsion x of E_{s_1}, and solve the 3-division condition of E_{s_2} at
// that x for s_2 by evaluation-interpolation.
template <class F>
struct CrosscheckInstance {
    typename F::Elem s1, s2, xP, yP1, yP2;
};

// The 3-torsion condition value: the (non-monic) transported 3-torsion
// polynomial of E_sigma evaluated at xi.  Polynomial in sigma; built from
// the twist-insensitive quartic (x^2 - sigma^2)(sigma^2 x^2 - 1) so that all
// coefficients stay polynomial in sigma.
template <class F>
typename F::Elem three_torsion_condition_value(const F& K, typename F::Elem sigma, typename F::Elem xi) {
    // q(x) = (x^2 - sigma^2)(sigma^2 x^2 - 1), origin (sigma, 0)
    auto s2 = K.mul(sigma, sigma);
    PolyVec<F> f1 = {K.neg(s2), K.zero(), K.one()};
    PolyVec<F> f2 = {K.neg(K.one()), K.zero(), s2};
    auto q = poly::mul(K, f1, f2);
    auto sh = poly::shift(K, q, sigma);
    auto coef = [&](int i) { return i <= poly::degree<F>(sh) ? sh[(size_t)i] : K.zero(); };
    auto q1 = coef(1), q2c = coef(2), q3 = coef(3), q4 = coef(4);
    auto third = K.inv(K.from_int((i64)3));
    auto c2 = q2c, c1 = K.mul(q1, q3), c0 = K.mul(K.mul(q1, q1), q4);
    auto s = K.mul(c2, third);
    auto a = K.sub(c1, K.mul(K.mul(c2, c2), third));
    auto b = K.add(K.sub(c0, K.mul(K.mul(c1, c2), third)), K.mul(K.from_int((i64)2), K.mul(K.mul(s, s), s)));
    // psi_3 = 3X^4 + 6aX^2 + 12bX - a^2, transported through
    // mu(x) = q1/(x - sigma) + q2/3
    PolyVec<F> psi3 = {K.neg(K.mul(a, a)), K.mul(K.from_int((i64)12), b), K.mul(K.from_int((i64)6), a), K.zero(),
                       K.from_int((i64)3)};
    poly::normalize(K, psi3);
    Mobius<F> mu{s, K.sub(q1, K.mul(s, sigma)), K.one(), K.neg(sigma)};
    auto T = poly::transport(K, psi3, mu.a, mu.b, mu.c, mu.d);
    return poly::eval(K, T, xi);
}

template <class F>
std::optional<CrosscheckInstance<F>> make_crosscheck_instance(const F& K, u64 seed) {
    SplitMix64 rng(derive_seed(seed, 0x5ec51));
    for (int attempt = 0; attempt < 200; ++attempt) {
        auto s1 = K.from_int(rng.next() % K.modulus());
        if (K.is_zero(s1)) continue;
        auto s14 = K.pow(s1, 4);
        if (K.eq(s14, K.one())) continue;
        DoubleCover<F> c1;
        try {
            c1 = es_cover(K, s1);
        } catch (const std::exception&) {
            continue;
        }
        CoverTorsion<F> t1(K, c1, 3);
        auto [h1, inf1] = t1.raw_level(3);
        (void)inf1;
        auto q1m = model_rhs(K, c1.model);
        for (u64 r : fpoly::roots(K, h1, seed)) {
            auto xi = K.from_int(r);
            if (!field_sqrt(K, poly::eval(K, q1m, xi))) continue;
            // interpolate sigma -> condition(sigma, xi); degree is modest
            const size_t samples = 64;
            std::vector<typename F::Elem> xs, ys;
            for (u64 i = 2; xs.size() < samples; ++i) {
                auto sg = K.from_int(i);
                xs.push_back(sg);
                ys.push_back(three_torsion_condition_value(K, sg, xi));
            }
            auto cond = poly::interpolate(K, xs, ys);
            if (poly::degree<F>(cond) < 1) continue;
            for (u64 rr : fpoly::roots(K, poly::squarefree_part(K, cond), seed ^ 0x77)) {
                auto s2 = K.from_int(rr);
                if (K.is_zero(s2)) continue;
                if (K.eq(K.pow(s2, 4), K.one())) continue;
                // identical branch sets give the excluded pair
                if (K.eq(s2, s1) || K.eq(s2, K.neg(s1)) || K.eq(s2, K.inv(s1)) || K.eq(s2, K.neg(K.inv(s1)))) continue;
                DoubleCover<F> c2;
                try {
                    c2 = es_cover(K, s2);
                } catch (const std::exception&) {
                    continue;
                }
                auto q2m = model_rhs(K, c2.model);
                if (!field_sqrt(K, poly::eval(K, q2m, xi))) continue;
                // common x-coordinate point pair
                for (int ptry = 0; ptry < 200; ++ptry) {
                    auto xp = K.from_int(rng.next() % K.modulus());
                    auto y1 = field_sqrt(K, poly::eval(K, q1m, xp));
                    auto y2 = field_sqrt(K, poly::eval(K, q2m, xp));
                    if (!y1 || !y2) continue;
                    return CrosscheckInstance<F>{s1, s2, xp, *y1, *y2};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace torsionx

#endif
