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

#ifndef TORSIONX_NTT_HPP
#define TORSIONX_NTT_HPP

#include <vector>

#include "torsionx/poly.hpp"
#include "torsionx/prime_field.hpp"

namespace torsionx {
namespace ntt {

using Fp = PrimeField;
using FpVec = PolyVec<Fp>;

// Decimation-in-frequency butterflies: natural order in, bit-reversed out.
// n must be a power of two with n | 2^two_adicity, w a primitive n-th root.
inline void dif(const Fp& K, std::vector<u64>& a, u64 w) {
    size_t n = a.size();
    for (size_t len = n; len >= 2; len >>= 1) {
        u64 wl = w;
        for (size_t l = len; l < n; l <<= 1) wl = K.sqr(wl);
        for (size_t i = 0; i < n; i += len) {
            u64 wj = K.one();
            for (size_t j = 0; j < len / 2; ++j) {
                u64 u = a[i + j], v = a[i + j + len / 2];
                a[i + j] = K.add(u, v);
                a[i + j + len / 2] = K.mul(K.sub(u, v), wj);
                wj = K.mul(wj, wl);
            }
        }
    }
}

// Decimation-in-time butterflies: bit-reversed order in, natural out.
inline void dit(const Fp& K, std::vector<u64>& a, u64 w) {
    size_t n = a.size();
    for (size_t len = 2; len <= n; len <<= 1) {
        u64 wl = w;
        for (size_t l = len; l < n; l <<= 1) wl = K.sqr(wl);
        for (size_t i = 0; i < n; i += len) {
            u64 wj = K.one();
            for (size_t j = 0; j < len / 2; ++j) {
                u64 u = a[i + j], v = K.mul(a[i + j + len / 2], wj);
                a[i + j] = K.add(u, v);
                a[i + j + len / 2] = K.sub(u, v);
                wj = K.mul(wj, wl);
            }
        }
    }
}

inline size_t next_pow2(size_t n) {
    size_t s = 1;
    while (s < n) s <<= 1;
    return s;
}

// Product via NTT; falls back to schoolbook when inputs are small or the
// prime lacks 2-adic headroom.
inline FpVec mul(const Fp& K, const FpVec& a, const FpVec& b) {
    if (a.empty() || b.empty()) return {};
    size_t rn = a.size() + b.size() - 1;
    size_t n = next_pow2(rn);
    int k = 0;
    while ((size_t(1) << k) < n) ++k;
    if (rn < 64 || k > K.two_adicity()) return poly::mul(K, a, b);
    u64 w = K.root_of_unity(k);
    std::vector<u64> fa(n, 0), fb(n, 0);
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    dif(K, fa, w);
    dif(K, fb, w);
    for (size_t i = 0; i < n; ++i) fa[i] = K.mul(fa[i], fb[i]);
    u64 winv = K.inv(w);
    dit(K, fa, winv);
    u64 ninv = K.inv(K.from_int((u64)n));
    fa.resize(rn);
    for (auto& c : fa) c = K.mul(c, ninv);
    poly::normalize(K, fa);
    return fa;
}

// Evaluation grid on nested cosets c * <omega_{2^m}> enumerated so that the
// first 2^m points are exactly the 2^m-th roots scaled by c, in bit-reversed
// order.  This lets adaptive interpolation double the grid without wasting
// already-computed samples.
class EvalGrid {
   public:
    EvalGrid(const Fp& K, int log2_max, u64 coset_seed) : K_(&K), kmax_(log2_max) {
        if (log2_max > K.two_adicity()) throw std::invalid_argument("EvalGrid: prime lacks 2-adic capacity");
        g_ = K.root_of_unity(log2_max);
        SplitMix64 rng(derive_seed(coset_seed, 0xc05e7));
        do {
            c_ = K.from_int(rng.next() % K.modulus());
        } while (K.is_zero(c_));
    }

    u64 coset() const { return c_; }
    int log2_max() const { return kmax_; }

    // k-th point, k < 2^kmax
    u64 point(u64 k) const {
        u64 e = bitrev(k, kmax_);
        return K_->mul(c_, K_->pow(g_, e));
    }

    // Interpolate from values v[k] = P(point(k)), k < S = 2^s; requires
    // deg P < S.  Returns the coefficients of P.
    FpVec interpolate_prefix(const std::vector<u64>& values, int s) const {
        const Fp& K = *K_;
        size_t S = size_t(1) << s;
        if (values.size() < S) throw std::invalid_argument("interpolate_prefix: not enough values");
        std::vector<u64> w(values.begin(), values.begin() + (long)S);
        u64 omega = g_;
        for (int i = 0; i < kmax_ - s; ++i) omega = K.sqr(omega);  // order-2^s root
        dit(K, w, K.inv(omega));
        u64 sinv = K.inv(K.from_int((u64)S));
        u64 cinv = K.inv(c_), cpow = K.one();
        for (size_t j = 0; j < S; ++j) {
            w[j] = K.mul(K.mul(w[j], sinv), cpow);
            cpow = K.mul(cpow, cinv);
        }
        poly::normalize(K, w);
        return w;
    }

    static u64 bitrev(u64 x, int bits) {
        u64 r = 0;
        for (int i = 0; i < bits; ++i) {
            r = (r << 1) | (x & 1);
            x >>= 1;
        }
        return r;
    }

   private:
    const Fp* K_;
    int kmax_;
    u64 g_;
    u64 c_;
};

}  // namespace ntt
}  // namespace torsionx

#endif
