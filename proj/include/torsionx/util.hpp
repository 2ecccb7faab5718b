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

#ifndef TORSIONX_UTIL_HPP
#define TORSIONX_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace torsionx {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Deterministic PRNG used everywhere randomness is needed; all derived
// streams are keyed so that identical (seed, purpose) gives identical runs.
struct SplitMix64 {
    u64 state;
    explicit SplitMix64(u64 seed) : state(seed) {}
    u64 next() {
        u64 z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound)
    u64 below(u64 bound) { return bound ? next() % bound : 0; }
};

inline u64 derive_seed(u64 seed, u64 tag) {
    SplitMix64 g(seed ^ (0xa5a5a5a5a5a5a5a5ULL + tag * 0x9e3779b97f4a7c15ULL));
    g.next();
    return g.next();
}

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (!(d & 1)) { d >>= 1; ++s; }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Deterministic stream of verification primes.  Primes are drawn from a
// seeded pseudorandom walk restricted to [2^59, 2^62); callers apply their
// own "good prime" filters on top.  With two_adic = k the stream only emits
// primes p with 2^k | p - 1, which is what the NTT-based interpolation
// kernels require.
class PrimeStream {
   public:
    explicit PrimeStream(u64 seed, int two_adic = 1, int lo_bits = 59, int hi_bits = 62)
        : gen_(derive_seed(seed, 0x9d1e5)), two_adic_(two_adic), lo_bits_(lo_bits), hi_bits_(hi_bits) {
        if (two_adic_ < 1 || two_adic_ > 40) throw std::invalid_argument("PrimeStream: bad two_adic");
        if (lo_bits_ < 10 || hi_bits_ <= lo_bits_ || hi_bits_ > 62) throw std::invalid_argument("PrimeStream: bad range");
    }

    u64 next() {
        for (int tries = 0; tries < 2000000; ++tries) {
            u64 span_bits = (u64)(hi_bits_ - lo_bits_);
            u64 bits = (u64)lo_bits_ + gen_.below(span_bits);
            u64 p;
            if (two_adic_ <= 1) {
                // arbitrary odd candidate with `bits` bits
                p = (gen_.next() >> (64 - (int)bits)) | (1ULL << (bits - 1)) | 1ULL;
            } else {
                // p = m * 2^k + 1 (m odd) for NTT-capable primes
                int mbits = (int)bits - two_adic_;
                if (mbits < 2) mbits = 2;
                u64 m = (gen_.next() >> (64 - mbits)) | (1ULL << (mbits - 1)) | 1ULL;
                p = (m << two_adic_) + 1;
            }
            if (p >> lo_bits_ == 0) continue;
            if (hi_bits_ < 62 && (p >> hi_bits_) != 0) continue;
            if (is_prime_u64(p)) return p;
        }
        throw std::runtime_error("PrimeStream: exhausted candidates");
    }

   private:
    SplitMix64 gen_;
    int two_adic_;
    int lo_bits_;
    int hi_bits_;
};

}  // namespace torsionx

#endif
