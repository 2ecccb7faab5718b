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

#ifndef TORSIONX_BIPOLY_HPP
#define TORSIONX_BIPOLY_HPP

#include "torsionx/ec.hpp"
#include "torsionx/ntt.hpp"

namespace torsionx {

// Dense bivariate polynomials over F_p: polynomial in z whose coefficients
// are polynomials in t.  Only the fraction-free route needs these (the
// production resultants go through evaluation-interpolation); sizes stay
// small.
namespace bipoly {

using Fp = PrimeField;
using FpVec = PolyVec<Fp>;
using BiPoly = std::vector<FpVec>;  // z-coefficient i is a poly in t

inline void normalize(BiPoly& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
}

inline int deg_z(const BiPoly& a) { return (int)a.size() - 1; }

inline BiPoly from_const(const FpVec& c) {
    BiPoly r;
    if (!c.empty()) r.push_back(c);
    return r;
}

inline BiPoly add(const Fp& K, const BiPoly& a, const BiPoly& b) {
    BiPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = poly::add(K, r[i], b[i]);
    normalize(r);
    return r;
}

inline BiPoly sub(const Fp& K, const BiPoly& a, const BiPoly& b) {
    BiPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = poly::sub(K, r[i], b[i]);
    normalize(r);
    return r;
}

inline BiPoly mul(const Fp& K, const BiPoly& a, const BiPoly& b) {
    if (a.empty() || b.empty()) return {};
    BiPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].empty()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].empty()) continue;
            r[i + j] = poly::add(K, r[i + j], ntt::mul(K, a[i], b[j]));
        }
    }
    normalize(r);
    return r;
}

inline BiPoly scale(const Fp& K, const BiPoly& a, const FpVec& c) {
    if (c.empty()) return {};
    BiPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = ntt::mul(K, a[i], c);
    normalize(r);
    return r;
}

// Specialize t -> t0.
inline FpVec eval_t(const Fp& K, const BiPoly& a, Fp::Elem t0) {
    FpVec r(a.size(), K.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = poly::eval(K, a[i], t0);
    poly::normalize(K, r);
    return r;
}

inline BiPoly exact_div_coeffs(const Fp& K, const BiPoly& a, const FpVec& c) {
    BiPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].empty() ? FpVec{} : poly::exact_div(K, a[i], c);
    normalize(r);
    return r;
}

// Pseudo-remainder in z: lc(B)^(deg A - deg B + 1) * A = Q*B + R.
inline BiPoly prem(const Fp& K, BiPoly A, const BiPoly& B) {
    int db = deg_z(B);
    if (db < 0) throw std::domain_error("bipoly prem: zero divisor");
    const FpVec& d = B.back();
    int e = deg_z(A) - db + 1;
    while (!A.empty() && deg_z(A) >= db) {
        BiPoly S(A.size() - B.size() + 1);
        S.back() = A.back();
        S = mul(K, S, B);
        A = sub(K, scale(K, A, d), S);
        --e;
    }
    for (; e > 0; --e) A = scale(K, A, d);
    return A;
}

// Resultant with respect to z by the fraction-free subresultant PRS.
// Content is pulled out first; the sign bookkeeping follows the classic
// subresultant scheme and is cross-checked against specialization in tests.
inline FpVec subresultant_resultant(const Fp& K, BiPoly A, BiPoly B) {
    if (A.empty() || B.empty()) return {};
    bool neg = false;
    // match the convention Res(f, g) = lc(g)^{deg f} prod f(beta)
    if ((deg_z(A) & 1) && (deg_z(B) & 1)) neg = !neg;
    if (deg_z(A) < deg_z(B)) {
        std::swap(A, B);
        if ((deg_z(A) & 1) && (deg_z(B) & 1)) neg = !neg;
    }
    auto content = [&](const BiPoly& P) {
        FpVec c;
        for (auto& coeff : P) c = poly::gcd(K, c, coeff);
        return c.empty() ? poly::constant(K, K.one()) : c;
    };
    auto ca = content(A), cb = content(B);
    A = exact_div_coeffs(K, A, ca);
    B = exact_div_coeffs(K, B, cb);
    // multiplier cont(A)^{deg B} cont(B)^{deg A}
    FpVec mult = poly::constant(K, K.one());
    for (int i = 0; i < deg_z(B); ++i) mult = ntt::mul(K, mult, ca);
    for (int i = 0; i < deg_z(A); ++i) mult = ntt::mul(K, mult, cb);

    if (deg_z(B) == 0) {
        FpVec r = poly::constant(K, K.one());
        for (int i = 0; i < deg_z(A); ++i) r = ntt::mul(K, r, B[0]);
        r = ntt::mul(K, r, mult);
        return neg ? poly::neg(K, r) : r;
    }

    FpVec g = poly::constant(K, K.one()), h = poly::constant(K, K.one());
    for (;;) {
        int da = deg_z(A), db = deg_z(B);
        int delta = da - db;
        if ((da & 1) && (db & 1)) neg = !neg;
        auto R = prem(K, A, B);
        A = B;
        // B = R / (g h^delta)
        FpVec div = g;
        for (int i = 0; i < delta; ++i) div = ntt::mul(K, div, h);
        B = R.empty() ? BiPoly{} : exact_div_coeffs(K, R, div);
        if (B.empty()) return {};  // common factor: resultant 0
        g = A.back();
        if (delta > 0) {
            // h = g^delta / h^(delta-1)
            FpVec num = poly::constant(K, K.one());
            for (int i = 0; i < delta; ++i) num = ntt::mul(K, num, g);
            FpVec den = poly::constant(K, K.one());
            for (int i = 0; i < delta - 1; ++i) den = ntt::mul(K, den, h);
            h = poly::exact_div(K, num, den);
        }
        if (deg_z(B) == 0) {
            // res = lc(B)^{deg A} / h^{deg A - 1}
            int dA = deg_z(A);
            FpVec num = poly::constant(K, K.one());
            for (int i = 0; i < dA; ++i) num = ntt::mul(K, num, B[0]);
            FpVec den = poly::constant(K, K.one());
            for (int i = 0; i < dA - 1; ++i) den = ntt::mul(K, den, h);
            auto r = poly::exact_div(K, num, den);
            r = ntt::mul(K, r, mult);
            return neg ? poly::neg(K, r) : r;
        }
    }
}

inline BiPoly one_const_(const Fp& K) { return from_const(poly::constant(K, K.one())); }

// Ring adapter so the division-polynomial table runs over F_p[t][z].
struct BiRing {
    const Fp* K;
    using P = BiPoly;
    P zero() const { return {}; }
    P one_elem() const { return from_const(poly::constant(*K, K->one())); }
    P add(const P& a, const P& b) const { return bipoly::add(*K, a, b); }
    P sub(const P& a, const P& b) const { return bipoly::sub(*K, a, b); }
    P mul(const P& a, const P& b) const { return bipoly::mul(*K, a, b); }
};

// Parametric torsion polynomial (order dividing n) of one side of the S3
// family, as a bivariate polynomial in (t, z); built from the same
// normal-form data as the sampled route but kept symbolic.
inline BiPoly parametric_divpoly(const Fp& K, int side, int n) {
    // side-1 curve data: a1(t), b1(t); side-2 likewise (see s3_family.hpp)
    auto third = K.inv(K.from_int((i64)3));
    FpVec t = poly::xpow(K, 1);
    FpVec two = poly::constant(K, K.from_int((i64)2));
    FpVec lead = poly::sub(K, two, t);
    FpVec c2 = poly::add(K, poly::constant(K, K.from_int((i64)30)), poly::scale(K, t, K.from_int((i64)3)));
    FpVec c1 = ntt::mul(K, lead, poly::sub(K, poly::constant(K, K.from_int((i64)30)), poly::scale(K, t, K.from_int((i64)3))));
    FpVec c0 = ntt::mul(K, ntt::mul(K, lead, lead), poly::add(K, two, t));
    FpVec a, b, q1, sshift;
    if (side == 1) {
        auto s = poly::scale(K, c2, third);
        a = poly::sub(K, c1, poly::scale(K, ntt::mul(K, c2, c2), third));
        b = poly::add(K, poly::sub(K, c0, poly::scale(K, ntt::mul(K, c1, c2), third)),
                      poly::scale(K, ntt::mul(K, s, ntt::mul(K, s, s)), K.from_int((i64)2)));
        sshift = s;
    } else {
        auto g0 = c0, g1 = c1, g2 = c2;
        auto cc2 = g1, cc1 = ntt::mul(K, g0, g2), cc0 = ntt::mul(K, g0, g0);
        auto s = poly::scale(K, cc2, third);
        a = poly::sub(K, cc1, poly::scale(K, ntt::mul(K, cc2, cc2), third));
        b = poly::add(K, poly::sub(K, cc0, poly::scale(K, ntt::mul(K, cc1, cc2), third)),
                      poly::scale(K, ntt::mul(K, s, ntt::mul(K, s, s)), K.from_int((i64)2)));
        q1 = g0;
        sshift = s;
    }
    // seeds over the bivariate ring
    BiRing R{&K};
    BiPoly f3 = {poly::neg(K, ntt::mul(K, a, a)), poly::scale(K, b, K.from_int((i64)12)),
                 poly::scale(K, a, K.from_int((i64)6)), {}, poly::constant(K, K.from_int((i64)3))};
    normalize(f3);
    BiPoly f4 = {poly::sub(K, poly::scale(K, ntt::mul(K, b, b), K.from_int((i64)-8)),
                           ntt::mul(K, a, ntt::mul(K, a, a))),
                 poly::scale(K, ntt::mul(K, a, b), K.from_int((i64)-4)),
                 poly::scale(K, ntt::mul(K, a, a), K.from_int((i64)-5)),
                 poly::scale(K, b, K.from_int((i64)20)),
                 poly::scale(K, a, K.from_int((i64)5)),
                 {},
                 poly::constant(K, K.one())};
    normalize(f4);
    for (auto& c : f4) c = poly::scale(K, c, K.from_int((i64)2));
    BiPoly F4 = {poly::scale(K, b, K.from_int((i64)4)), poly::scale(K, a, K.from_int((i64)4)), {},
                 poly::constant(K, K.from_int((i64)4))};
    normalize(F4);
    DivpolySeeds<BiRing> seeds{f3, f4, R.mul(F4, F4)};
    auto tab = divpoly_ftable(R, seeds, std::max(n, 4));
    BiPoly T = tab[(size_t)n];
    if (n % 2 == 0) {
        BiPoly cube = {b, a, {}, poly::constant(K, K.one())};
        normalize(cube);
        T = R.mul(T, cube);
    }
    // transport to the shared z-coordinate
    if (side == 1) {
        // z = X - s, i.e. X = z + s: substitute X -> z + s
        BiPoly acc = from_const(T.back());
        BiPoly lin = {sshift.empty() ? FpVec{} : sshift, poly::constant(K, K.one())};
        normalize(lin);
        for (int k = deg_z(T) - 1; k >= 0; --k) acc = add(K, mul(K, acc, lin), from_const(T[(size_t)k]));
        return acc;
    }
    // side 2: X = (s z + q1)/z: T -> sum T_k (s z + q1)^k z^{d-k}
    BiPoly num = {q1, sshift};
    normalize(num);
    BiPoly den = {{}, poly::constant(K, K.one())};
    BiPoly acc = from_const(T.back());
    BiPoly denpow = one_const_(K);
    int d = deg_z(T);
    for (int k = d - 1; k >= 0; --k) {
        denpow = mul(K, denpow, den);
        acc = add(K, mul(K, acc, num), mul(K, denpow, from_const(T[(size_t)k])));
    }
    return acc;
}

}  // namespace bipoly
}  // namespace torsionx

#endif
