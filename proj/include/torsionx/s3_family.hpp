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

#ifndef TORSIONX_S3_FAMILY_HPP
#define TORSIONX_S3_FAMILY_HPP

#include "torsionx/ec.hpp"
#include "torsionx/mobius.hpp"

namespace torsionx {

// The one-parameter family y^2 = x^6 + t x^3 + 1 with the extra involution
// x -> 1/x. Normalizing the involution to x -> -x via (x-1)/(x+1) and
// rescaling to a monic cubic gives the quotient data
//   g_t(z) = z^3 + (30+3t) z^2 + (2-t)(30-3t) z + (2-t)^2 (2+t),
// with z = (2-t) * ((x-1)/(x+1))^2. The degenerate parameters are t = ±2
// (the sextic acquires double roots), which reproduces the family's
// excluded-root set.
//
// Side 1 is the cubic cover y^2 = g_t(z) (origin at infinity); side 2 the
// quartic y^2 = z g_t(z) (origin (0, 0)); quadratic twists are dropped
// throughout since they do not move torsion x-coordinates.
template <class F>
struct S3Fiber {
    PolyVec<F> cubic;                  // g_t, monic
    ShortW<F> E1, E2;                  // short Weierstrass normal forms
    typename F::Elem shift1;           // side 1: z = X + shift1
    Mobius<F> mu2;                     // side 2: X = mu2(z)
};

template <class F>
std::optional<S3Fiber<F>> s3_fiber(const F& K, typename F::Elem t) {
    S3Fiber<F> out;
    auto two = K.from_int((i64)2);
    auto lead = K.sub(two, t);
    if (K.is_zero(lead) || K.is_zero(K.add(two, t))) return std::nullopt;  // t = ±2
    auto c2 = K.add(K.from_int((i64)30), K.mul(K.from_int((i64)3), t));
    auto c1 = K.mul(lead, K.sub(K.from_int((i64)30), K.mul(K.from_int((i64)3), t)));
    auto c0 = K.mul(K.mul(lead, lead), K.add(two, t));
    PolyVec<F> g = {c0, c1, c2, K.one()};
    poly::normalize(K, g);
    if (poly::degree<F>(g) != 3) return std::nullopt;
    if (poly::degree<F>(poly::gcd(K, g, poly::derivative(K, g))) != 0) return std::nullopt;
    if (K.is_zero(c0)) return std::nullopt;
    out.cubic = g;

    auto third = K.inv(K.from_int((i64)3));
    // side 1: depress the monic cubic; X = z - c2/3, i.e. z = X + c2/3
    {
        auto s = K.mul(c2, third);
        auto a = K.sub(c1, K.mul(K.mul(c2, c2), third));
        auto b = K.add(K.sub(c0, K.mul(K.mul(c1, c2), third)), K.mul(two, K.mul(K.mul(s, s), s)));
        out.E1 = {a, b};
        out.shift1 = s;
    }
    // side 2: quartic q(z) = z g(z), origin 0; Taylor q1..q4 = g0, g1, g2, 1
    {
        auto q1 = c0, q2 = c1, q3 = c2, q4 = K.one();
        auto cc2 = q2, cc1 = K.mul(q1, q3), cc0 = K.mul(K.mul(q1, q1), q4);
        auto s = K.mul(cc2, third);
        auto a = K.sub(cc1, K.mul(K.mul(cc2, cc2), third));
        auto b = K.add(K.sub(cc0, K.mul(K.mul(cc1, cc2), third)), K.mul(two, K.mul(K.mul(s, s), s)));
        out.E2 = {a, b};
        out.mu2 = {s, q1, K.one(), K.zero()};  // X = q1/z + q2/3
        if (K.is_zero(ec_disc(K, out.E1)) || K.is_zero(ec_disc(K, out.E2))) return std::nullopt;
    }
    return out;
}

// Torsion-x polynomials of both sides in the shared z-coordinate, levels
// 2..cap.  Exact-order refinement happens on the (monic, polynomial-in-t)
// short Weierstrass side; the side-2 Moebius transport is NOT re-normalized,
// so every coefficient stays a polynomial function of t and sampled values
// interpolate to honest polynomials.  The price is a t-dependent leading
// coefficient on side 2, whose vanishing locus joins the excluded-root
// filter.
template <class F>
struct S3Levels {
    std::vector<PolyVec<F>> div1, div2;      // [n], z-coordinates
    std::vector<PolyVec<F>> exact1, exact2;  // [n], z-coordinates
    bool degenerate = false;                 // degree structure broke at this t
};

template <class F>
std::vector<PolyVec<F>> exact_refine_(const F& K, const std::vector<PolyVec<F>>& div, int cap,
                                      const std::vector<char>& mask) {
    std::vector<PolyVec<F>> ex((size_t)cap + 1);
    for (int n = 2; n <= cap; ++n) {
        if (!mask[(size_t)n]) continue;  // mask is divisor-closed
        auto q = div[(size_t)n];
        for (int d = 2; d < n; ++d)
            if (n % d == 0) q = poly::exact_div(K, q, ex[(size_t)d]);
        ex[(size_t)n] = q;
    }
    return ex;
}

// Optional per-side level masks restrict the work to the levels a caller
// still needs (closed under divisors for the exact refinement); empty masks
// mean "all levels up to the cap".
template <class F>
std::optional<S3Levels<F>> s3_levels(const F& K, typename F::Elem t, int cap1, int cap2, bool exact,
                                     const std::vector<char>& need1 = {}, const std::vector<char>& need2 = {}) {
    auto fib = s3_fiber(K, t);
    if (!fib) return std::nullopt;
    S3Levels<F> out;
    int cap = std::max(cap1, cap2);
    auto wanted = [](const std::vector<char>& need, int n, int capside) {
        if (n > capside) return false;
        return need.empty() || ((size_t)n < need.size() && need[(size_t)n]);
    };
    auto closure = [&](const std::vector<char>& need, int capside) {
        std::vector<char> c((size_t)capside + 1, need.empty() ? 1 : 0);
        if (!need.empty())
            for (int n = 2; n <= capside; ++n)
                if (wanted(need, n, capside))
                    for (int d = 2; d <= n; ++d)
                        if (n % d == 0) c[(size_t)d] = 1;
        return c;
    };
    auto c1 = closure(need1, cap1);
    auto c2 = closure(need2, cap2);
    int top1 = 1, top2 = 1;
    for (int n = 2; n <= cap1; ++n)
        if (c1[(size_t)n]) top1 = n;
    for (int n = 2; n <= cap2; ++n)
        if (c2[(size_t)n]) top2 = n;
    auto tab1 = divpoly_table(K, fib->E1, std::max(top1, 1));
    auto tab2 = divpoly_table(K, fib->E2, std::max(top2, 1));
    std::vector<PolyVec<F>> sw1((size_t)cap + 1), sw2((size_t)cap + 1);
    for (int n = 2; n <= top1; ++n)
        if (c1[(size_t)n]) sw1[(size_t)n] = torsion_x_div(K, fib->E1, tab1, n);
    for (int n = 2; n <= top2; ++n)
        if (c2[(size_t)n]) sw2[(size_t)n] = torsion_x_div(K, fib->E2, tab2, n);
    auto transport1 = [&](const PolyVec<F>& T) { return poly::shift(K, T, fib->shift1); };
    auto transport2 = [&](const PolyVec<F>& T) {
        // raw transport, no monic normalization
        return poly::transport(K, T, fib->mu2.a, fib->mu2.b, fib->mu2.c, fib->mu2.d);
    };
    out.div1.resize((size_t)cap + 1);
    out.div2.resize((size_t)cap + 1);
    for (int n = 2; n <= top1; ++n)
        if (c1[(size_t)n]) out.div1[(size_t)n] = transport1(sw1[(size_t)n]);
    for (int n = 2; n <= top2; ++n)
        if (c2[(size_t)n]) out.div2[(size_t)n] = transport2(sw2[(size_t)n]);
    if (exact) {
        auto ex1 = exact_refine_(K, sw1, top1, c1);
        auto ex2 = exact_refine_(K, sw2, top2, c2);
        out.exact1.resize((size_t)cap + 1);
        out.exact2.resize((size_t)cap + 1);
        for (int n = 2; n <= top1; ++n)
            if (c1[(size_t)n]) out.exact1[(size_t)n] = transport1(ex1[(size_t)n]);
        for (int n = 2; n <= top2; ++n)
            if (c2[(size_t)n]) out.exact2[(size_t)n] = transport2(ex2[(size_t)n]);
    }
    return out;
}

// Exact-order point counts (half of the number of points of exact order n,
// n >= 3): the generic z-degree of the side-1 exact level.
inline int exact_level_degree(int n) {
    if (n == 2) return 3;
    // n^2 * prod over primes ell | n of (1 - ell^-2), halved
    long long num = (long long)n * n;
    long long den = 1;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            num *= (long long)p * p - 1;
            den *= (long long)p * p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) {
        num *= (long long)m * m - 1;
        den *= (long long)m * m;
    }
    return (int)(num / den / 2);
}

}  // namespace torsionx

#endif
