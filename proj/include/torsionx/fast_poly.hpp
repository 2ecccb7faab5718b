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

#ifndef TORSIONX_FAST_POLY_HPP
#define TORSIONX_FAST_POLY_HPP

#include <array>

#include "torsionx/ntt.hpp"

namespace torsionx {
namespace fpoly {

using Fp = PrimeField;
using FpVec = PolyVec<Fp>;

// Power-series inverse of f (f[0] != 0) modulo x^n by Newton iteration.
inline FpVec series_inverse(const Fp& K, const FpVec& f, size_t n) {
    if (f.empty() || K.is_zero(f[0])) throw std::domain_error("series_inverse: constant term is zero");
    FpVec g = {K.inv(f[0])};
    size_t k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        FpVec fk(f.begin(), f.begin() + (long)std::min(f.size(), k));
        auto fg = ntt::mul(K, fk, g);
        fg.resize(k, K.zero());
        // g <- g * (2 - f g) mod x^k
        FpVec two_minus(k, K.zero());
        for (size_t i = 0; i < k; ++i) two_minus[i] = K.neg(fg[i]);
        two_minus[0] = K.add(two_minus[0], K.from_int((i64)2));
        g = ntt::mul(K, g, two_minus);
        g.resize(k, K.zero());
    }
    g.resize(n, K.zero());
    return g;
}

inline FpVec reverse_poly(FpVec f) {
    std::reverse(f.begin(), f.end());
    return f;
}

// Division with remainder; switches to reversal + series inverse for large
// operands.
inline void fast_divrem(const Fp& K, const FpVec& a, const FpVec& b, FpVec& q, FpVec& r) {
    int da = poly::degree<Fp>(a), db = poly::degree<Fp>(b);
    if (db < 0) throw std::domain_error("fast_divrem: division by zero");
    if (da < db) {
        q.clear();
        r = a;
        return;
    }
    if ((size_t)(da - db) < 64 || (size_t)db < 64) {
        poly::divrem(K, a, b, q, r);
        return;
    }
    size_t qn = (size_t)(da - db) + 1;
    auto ra = reverse_poly(a);
    auto rb = reverse_poly(b);
    auto inv = series_inverse(K, rb, qn);
    auto rq = ntt::mul(K, ra, inv);
    rq.resize(qn, K.zero());
    q = reverse_poly(rq);
    poly::normalize(K, q);
    auto bq = ntt::mul(K, b, q);
    r = poly::sub(K, a, bq);
    if (poly::degree<Fp>(r) >= db) throw std::logic_error("fast_divrem: remainder too large");
}

inline FpVec fast_rem(const Fp& K, const FpVec& a, const FpVec& b) {
    FpVec q, r;
    fast_divrem(K, a, b, q, r);
    return r;
}

// ---------------------------------------------------------------------------
// Half-gcd
// ---------------------------------------------------------------------------

// 2x2 matrix over F_p[x]
struct PolyMat {
    std::array<FpVec, 4> m;  // (m0 m1; m2 m3)
};

inline PolyMat mat_identity(const Fp& K) {
    PolyMat M;
    M.m[0] = poly::constant(K, K.one());
    M.m[3] = poly::constant(K, K.one());
    return M;
}

inline PolyMat mat_mul(const Fp& K, const PolyMat& A, const PolyMat& B) {
    PolyMat C;
    C.m[0] = poly::add(K, ntt::mul(K, A.m[0], B.m[0]), ntt::mul(K, A.m[1], B.m[2]));
    C.m[1] = poly::add(K, ntt::mul(K, A.m[0], B.m[1]), ntt::mul(K, A.m[1], B.m[3]));
    C.m[2] = poly::add(K, ntt::mul(K, A.m[2], B.m[0]), ntt::mul(K, A.m[3], B.m[2]));
    C.m[3] = poly::add(K, ntt::mul(K, A.m[2], B.m[1]), ntt::mul(K, A.m[3], B.m[3]));
    return C;
}

inline void mat_apply(const Fp& K, const PolyMat& M, const FpVec& a, const FpVec& b, FpVec& u, FpVec& v) {
    u = poly::add(K, ntt::mul(K, M.m[0], a), ntt::mul(K, M.m[1], b));
    v = poly::add(K, ntt::mul(K, M.m[2], a), ntt::mul(K, M.m[3], b));
}

// One Euclid step as a matrix: (b, a - q b).
inline PolyMat euclid_step_mat(const Fp& K, const FpVec& q) {
    PolyMat M;
    M.m[0] = {};
    M.m[1] = poly::constant(K, K.one());
    M.m[2] = poly::constant(K, K.one());
    M.m[3] = poly::neg(K, q);
    return M;
}

// hgcd(a, b) with deg a > deg b: a matrix M with (u, v)^T = M (a, b)^T such
// that deg u >= ceil(deg a / 2) > deg v.  Classic recursive scheme; all
// degree bookkeeping follows the "upper half" presentation.
inline PolyMat hgcd(const Fp& K, const FpVec& a, const FpVec& b);

namespace detail_hgcd {

inline PolyMat hgcd_rec(const Fp& K, const FpVec& a, const FpVec& b) {
    int da = poly::degree<Fp>(a);
    int m = (da + 1) / 2;
    if (poly::degree<Fp>(b) < m) return mat_identity(K);
    if (da < 96) {
        // iterative fallback
        PolyMat M = mat_identity(K);
        FpVec u = a, v = b;
        while (poly::degree<Fp>(v) >= m) {
            FpVec q, r;
            poly::divrem(K, u, v, q, r);
            M = mat_mul(K, euclid_step_mat(K, q), M);
            u.swap(v);
            v = r;
        }
        return M;
    }
    // split off the top 2(da - m) coefficients
    auto top = [&](const FpVec& f, int k) {
        FpVec t;
        if (poly::degree<Fp>(f) >= k) t.assign(f.begin() + k, f.end());
        return t;
    };
    auto a1 = top(a, m);
    auto b1 = top(b, m);
    PolyMat M1 = hgcd_rec(K, a1, b1);
    FpVec u, v;
    mat_apply(K, M1, a, b, u, v);
    if (poly::degree<Fp>(v) < m) return M1;
    // one division step
    FpVec q, r;
    fast_divrem(K, u, v, q, r);
    PolyMat Q = mat_mul(K, euclid_step_mat(K, q), M1);
    u.swap(v);
    v = r;
    if (poly::degree<Fp>(v) < m) return Q;
    int k = 2 * m - poly::degree<Fp>(u);
    auto u1 = top(u, k);
    auto v1 = top(v, k);
    PolyMat M2 = hgcd_rec(K, u1, v1);
    return mat_mul(K, M2, Q);
}

}  // namespace detail_hgcd

inline PolyMat hgcd(const Fp& K, const FpVec& a, const FpVec& b) { return detail_hgcd::hgcd_rec(K, a, b); }

// Monic gcd with subquadratic growth; falls back to the Euclid loop for
// small inputs.
inline FpVec fast_gcd(const Fp& K, FpVec a, FpVec b) {
    if (poly::degree<Fp>(a) < poly::degree<Fp>(b)) a.swap(b);
    while (!b.empty()) {
        if (poly::degree<Fp>(a) < 128) return poly::gcd(K, a, b);
        auto M = hgcd(K, a, b);
        FpVec u, v;
        mat_apply(K, M, a, b, u, v);
        a.swap(u);
        b.swap(v);
        poly::normalize(K, a);
        poly::normalize(K, b);
        if (!b.empty()) {
            auto r = fast_rem(K, a, b);
            a.swap(b);
            b = r;
        }
    }
    return poly::monic(K, a);
}

// Squarefree part via fast gcd.
inline FpVec fast_squarefree_part(const Fp& K, const FpVec& f) {
    if (f.empty()) throw std::domain_error("fast_squarefree_part: zero polynomial");
    if (poly::degree<Fp>(f) == 0) return poly::constant(K, K.one());
    auto g = fast_gcd(K, f, poly::derivative(K, f));
    if (poly::degree<Fp>(g) == 0) return poly::monic(K, f);
    FpVec q, r;
    fast_divrem(K, f, g, q, r);
    if (!r.empty()) throw std::logic_error("fast_squarefree_part: inexact division");
    return poly::monic(K, q);
}

// Product tree over a list of polynomials.
inline FpVec product_tree_root(const Fp& K, std::vector<FpVec> level) {
    if (level.empty()) return poly::constant(K, K.one());
    while (level.size() > 1) {
        std::vector<FpVec> next;
        for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(ntt::mul(K, level[i], level[i + 1]));
        if (level.size() & 1) next.push_back(level.back());
        level.swap(next);
    }
    return level[0];
}

// Remainders of P modulo each modulus via a remainder tree (moduli list is
// padded to a power of two with the constant 1, remainder {} there).
inline std::vector<FpVec> remainder_tree(const Fp& K, const FpVec& P, const std::vector<FpVec>& moduli) {
    size_t n = moduli.size();
    if (n == 0) return {};
    size_t nn = 1;
    while (nn < n) nn <<= 1;
    std::vector<std::vector<FpVec>> tree;
    tree.emplace_back(moduli);
    tree[0].resize(nn, poly::constant(K, K.one()));
    while (tree.back().size() > 1) {
        const auto& prev = tree.back();
        std::vector<FpVec> next(prev.size() / 2);
        for (size_t i = 0; i < next.size(); ++i) next[i] = ntt::mul(K, prev[2 * i], prev[2 * i + 1]);
        tree.push_back(std::move(next));
    }
    std::vector<FpVec> cur = {fast_rem(K, P, tree.back()[0])};
    for (size_t lvl = tree.size() - 1; lvl-- > 0;) {
        const auto& nodes = tree[lvl];
        std::vector<FpVec> nxt(nodes.size());
        for (size_t i = 0; i < nodes.size(); ++i) nxt[i] = fast_rem(K, cur[i / 2], nodes[i]);
        cur.swap(nxt);
    }
    cur.resize(n);
    return cur;
}

}  // namespace fpoly
}  // namespace torsionx

#endif
