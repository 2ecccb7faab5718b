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

#ifndef TORSIONX_POLY_HPP
#define TORSIONX_POLY_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "torsionx/util.hpp"

namespace torsionx {

// Dense univariate polynomials over a field object F (PrimeField, ExtField,
// RationalField, NumberField all model the same concept).  Coefficient i is
// the x^i coefficient; the zero polynomial is the empty vector (degree -1).
template <class F>
using PolyVec = std::vector<typename F::Elem>;

namespace poly {

template <class F>
int degree(const PolyVec<F>& a) {
    return (int)a.size() - 1;
}

template <class F>
bool is_zero(const PolyVec<F>& a) {
    return a.empty();
}

template <class F>
void normalize(const F& K, PolyVec<F>& a) {
    while (!a.empty() && K.is_zero(a.back())) a.pop_back();
}

template <class F>
PolyVec<F> constant(const F& K, typename F::Elem c) {
    PolyVec<F> r;
    if (!K.is_zero(c)) r.push_back(c);
    return r;
}

template <class F>
PolyVec<F> from_ints(const F& K, const std::vector<i64>& cs) {
    PolyVec<F> r;
    r.reserve(cs.size());
    for (auto c : cs) r.push_back(K.from_int(c));
    normalize(K, r);
    return r;
}

// monomial x^n
template <class F>
PolyVec<F> xpow(const F& K, int n) {
    PolyVec<F> r((size_t)n + 1, K.zero());
    r.back() = K.one();
    return r;
}

template <class F>
typename F::Elem lc(const F& K, const PolyVec<F>& a) {
    return a.empty() ? K.zero() : a.back();
}

template <class F>
bool eq(const F& K, const PolyVec<F>& a, const PolyVec<F>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!K.eq(a[i], b[i])) return false;
    return true;
}

template <class F>
PolyVec<F> add(const F& K, const PolyVec<F>& a, const PolyVec<F>& b) {
    PolyVec<F> r(std::max(a.size(), b.size()), K.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = K.add(r[i], b[i]);
    normalize(K, r);
    return r;
}

template <class F>
PolyVec<F> sub(const F& K, const PolyVec<F>& a, const PolyVec<F>& b) {
    PolyVec<F> r(std::max(a.size(), b.size()), K.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = K.sub(r[i], b[i]);
    normalize(K, r);
    return r;
}

template <class F>
PolyVec<F> neg(const F& K, PolyVec<F> a) {
    for (auto& c : a) c = K.neg(c);
    return a;
}

template <class F>
PolyVec<F> scale(const F& K, const PolyVec<F>& a, typename F::Elem s) {
    if (K.is_zero(s)) return {};
    PolyVec<F> r(a.size(), K.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = K.mul(a[i], s);
    normalize(K, r);
    return r;
}

template <class F>
PolyVec<F> mul(const F& K, const PolyVec<F>& a, const PolyVec<F>& b) {
    if (a.empty() || b.empty()) return {};
    PolyVec<F> r(a.size() + b.size() - 1, K.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (K.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    }
    normalize(K, r);
    return r;
}

template <class F>
PolyVec<F> monic(const F& K, const PolyVec<F>& a) {
    if (a.empty()) return a;
    if (K.eq(a.back(), K.one())) return a;
    return scale(K, a, K.inv(a.back()));
}

// Division with remainder; requires invertible leading coefficient of b.
template <class F>
void divrem(const F& K, const PolyVec<F>& a, const PolyVec<F>& b, PolyVec<F>& q, PolyVec<F>& r) {
    if (b.empty()) throw std::domain_error("poly: division by zero polynomial");
    r = a;
    q.clear();
    int db = degree<F>(b);
    if (degree<F>(a) < db) return;
    q.assign(a.size() - b.size() + 1, K.zero());
    auto ilc = K.inv(b.back());
    for (int i = degree<F>(r); i >= db; --i) {
        if (K.is_zero(r[(size_t)i])) continue;
        auto f = K.mul(r[(size_t)i], ilc);
        q[(size_t)(i - db)] = f;
        for (int j = 0; j <= db; ++j) r[(size_t)(i - db + j)] = K.sub(r[(size_t)(i - db + j)], K.mul(f, b[(size_t)j]));
    }
    normalize(K, r);
    normalize(K, q);
}

template <class F>
PolyVec<F> rem(const F& K, const PolyVec<F>& a, const PolyVec<F>& b) {
    PolyVec<F> q, r;
    divrem(K, a, b, q, r);
    return r;
}

template <class F>
PolyVec<F> quot(const F& K, const PolyVec<F>& a, const PolyVec<F>& b) {
    PolyVec<F> q, r;
    divrem(K, a, b, q, r);
    return q;
}

// Exact division; throws if the remainder is nonzero.
template <class F>
PolyVec<F> exact_div(const F& K, const PolyVec<F>& a, const PolyVec<F>& b) {
    PolyVec<F> q, r;
    divrem(K, a, b, q, r);
    if (!r.empty()) throw std::domain_error("poly: inexact division");
    return q;
}

// Monic gcd; gcd(0,0) = 0.
template <class F>
PolyVec<F> gcd(const F& K, PolyVec<F> a, PolyVec<F> b) {
    while (!b.empty()) {
        a = rem(K, a, b);
        a.swap(b);
    }
    return monic(K, a);
}

// Extended gcd: returns monic g plus s,t with s*a + t*b = g.
template <class F>
PolyVec<F> xgcd(const F& K, const PolyVec<F>& a, const PolyVec<F>& b, PolyVec<F>& s, PolyVec<F>& t) {
    PolyVec<F> r0 = a, r1 = b;
    PolyVec<F> s0 = constant(K, K.one()), s1 = {};
    PolyVec<F> t0 = {}, t1 = constant(K, K.one());
    while (!r1.empty()) {
        PolyVec<F> q, r;
        divrem(K, r0, r1, q, r);
        r0.swap(r1);
        r1 = r;
        auto snew = sub(K, s0, mul(K, q, s1));
        s0.swap(s1);
        s1 = snew;
        auto tnew = sub(K, t0, mul(K, q, t1));
        t0.swap(t1);
        t1 = tnew;
    }
    if (r0.empty()) {
        s = {};
        t = {};
        return {};
    }
    auto il = K.inv(r0.back());
    s = scale(K, s0, il);
    t = scale(K, t0, il);
    return scale(K, r0, il);
}

template <class F>
PolyVec<F> derivative(const F& K, const PolyVec<F>& a) {
    if (a.size() <= 1) return {};
    PolyVec<F> r(a.size() - 1, K.zero());
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = K.mul(a[i], K.from_int((u64)i));
    normalize(K, r);
    return r;
}

template <class F>
typename F::Elem eval(const F& K, const PolyVec<F>& a, typename F::Elem x) {
    auto r = K.zero();
    for (size_t i = a.size(); i-- > 0;) r = K.add(K.mul(r, x), a[i]);
    return r;
}

// Product of distinct irreducible factors via f / gcd(f, f').
// Requires characteristic 0 or characteristic > deg f; primes below the
// threshold are rejected rather than special-cased.
template <class F>
PolyVec<F> squarefree_part(const F& K, const PolyVec<F>& f) {
    if (f.empty()) throw std::domain_error("squarefree_part: zero polynomial");
    u64 ch = field_characteristic(K);
    if (ch != 0 && (u64)degree<F>(f) >= ch)
        throw std::domain_error("squarefree_part: characteristic hazard (char <= deg, pick a larger prime)");
    if (degree<F>(f) == 0) return constant(K, K.one());
    auto g = gcd(K, f, derivative(K, f));
    if (degree<F>(g) == 0) return monic(K, f);
    return monic(K, exact_div(K, f, g));
}

// Yun's squarefree decomposition: f = lc * prod A_i^i with the A_i squarefree
// and pairwise coprime.  Returns the list A_1, A_2, ... (monic).
template <class F>
std::vector<PolyVec<F>> squarefree_decomposition(const F& K, const PolyVec<F>& f) {
    std::vector<PolyVec<F>> out;
    if (degree<F>(f) < 1) return out;
    auto fm = monic(K, f);
    auto df = derivative(K, fm);
    auto a = gcd(K, fm, df);
    auto b = exact_div(K, fm, a);
    auto c = exact_div(K, df, a);
    auto d = sub(K, c, derivative(K, b));
    while (degree<F>(b) > 0) {
        auto ai = gcd(K, b, d);
        out.push_back(ai);
        b = exact_div(K, b, ai);
        c = exact_div(K, d, ai);
        d = sub(K, c, derivative(K, b));
    }
    return out;
}

template <class F>
PolyVec<F> mulmod(const F& K, const PolyVec<F>& a, const PolyVec<F>& b, const PolyVec<F>& m) {
    return rem(K, mul(K, a, b), m);
}

template <class F>
PolyVec<F> powmod(const F& K, PolyVec<F> base, u64 e, const PolyVec<F>& m) {
    PolyVec<F> r = constant(K, K.one());
    base = rem(K, base, m);
    while (e) {
        if (e & 1) r = mulmod(K, r, base, m);
        base = mulmod(K, base, base, m);
        e >>= 1;
    }
    return r;
}

// Taylor shift: returns a(x + s).
template <class F>
PolyVec<F> shift(const F& K, PolyVec<F> a, typename F::Elem s) {
    int d = degree<F>(a);
    if (d < 1 || K.is_zero(s)) return a;
    // synthetic division by (x - (-s)) repeatedly
    for (int i = 0; i < d; ++i) {
        for (int j = d - 1; j >= i; --j) a[(size_t)j] = K.add(a[(size_t)j], K.mul(s, a[(size_t)j + 1]));
    }
    return a;
}

// Q(x) = (c x + d)^deg(P) * P((a x + b) / (c x + d)).
// The roots of Q are the preimages under the Moebius map of the affine roots
// of P; a root of P at (a:c) (the image of infinity) lowers the degree.
template <class F>
PolyVec<F> transport(const F& K, const PolyVec<F>& P, typename F::Elem a, typename F::Elem b, typename F::Elem c,
                     typename F::Elem d) {
    int deg = degree<F>(P);
    if (deg < 0) return {};
    // Horner in (a x + b) with powers of (c x + d)
    PolyVec<F> num = {b, a}, den = {d, c};
    normalize(K, num);
    normalize(K, den);
    PolyVec<F> acc = constant(K, P.back());
    PolyVec<F> denpow = constant(K, K.one());
    for (int i = deg - 1; i >= 0; --i) {
        denpow = mul(K, denpow, den);
        acc = add(K, mul(K, acc, num), scale(K, denpow, P[(size_t)i]));
    }
    normalize(K, acc);
    return acc;
}

// den^{deg G} * G(num/den) for arbitrary num, den polynomials.
template <class F>
PolyVec<F> compose_rational(const F& K, const PolyVec<F>& G, const PolyVec<F>& num, const PolyVec<F>& den) {
    int deg = degree<F>(G);
    if (deg < 0) return {};
    PolyVec<F> acc = constant(K, G.back());
    PolyVec<F> denpow = constant(K, K.one());
    for (int i = deg - 1; i >= 0; --i) {
        denpow = mul(K, denpow, den);
        acc = add(K, mul(K, acc, num), scale(K, denpow, G[(size_t)i]));
    }
    normalize(K, acc);
    return acc;
}

// Lagrange interpolation through (xs[i], ys[i]); O(n^2), distinct xs.
template <class F>
PolyVec<F> interpolate(const F& K, const std::vector<typename F::Elem>& xs, const std::vector<typename F::Elem>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
    size_t n = xs.size();
    // Newton form
    std::vector<typename F::Elem> dd(ys);
    for (size_t j = 1; j < n; ++j) {
        for (size_t i = n - 1; i >= j; --i) {
            auto den = K.sub(xs[i], xs[i - j]);
            dd[i] = K.mul(K.sub(dd[i], dd[i - 1]), K.inv(den));
            if (i == j) break;
        }
    }
    PolyVec<F> r, basis = constant(K, K.one());
    for (size_t i = 0; i < n; ++i) {
        r = add(K, r, scale(K, basis, dd[i]));
        basis = mul(K, basis, PolyVec<F>{K.neg(xs[i]), K.one()});
    }
    return r;
}

// res1(f, g) = lc(f)^{deg g} * prod_{f(alpha)=0} g(alpha)
template <class F>
typename F::Elem res1_(const F& K, PolyVec<F> f, PolyVec<F> g) {
    if (f.empty() || g.empty()) return K.zero();
    auto acc = K.one();
    for (;;) {
        int df = degree<F>(f);
        if (df == 0) return K.mul(acc, K.pow(f[0], (u64)degree<F>(g)));
        auto r = rem(K, g, f);
        if (r.empty()) return K.zero();
        int dr = degree<F>(r);
        acc = K.mul(acc, K.pow(f.back(), (u64)(degree<F>(g) - dr)));
        if ((df & 1) && (dr & 1)) acc = K.neg(acc);
        g.swap(f);
        f = r;
    }
}

// Res(f, g) = lc(g)^{deg f} * prod f(beta) over the roots beta of g.
// Zero input gives 0 (callers that care attach a warning status).
template <class F>
typename F::Elem resultant(const F& K, const PolyVec<F>& f, const PolyVec<F>& g) {
    return res1_(K, g, f);
}

template <class F, class RNG>
PolyVec<F> random_poly(const F& K, RNG& rng, int deg) {
    PolyVec<F> r((size_t)deg + 1, K.zero());
    for (auto& c : r) c = K.from_int(rng.next());
    while (K.is_zero(r.back())) r.back() = K.from_int(rng.next());
    return r;
}

}  // namespace poly
}  // namespace torsionx

#endif
