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

#ifndef TORSIONX_FACTOR_HPP
#define TORSIONX_FACTOR_HPP

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "torsionx/ext_field.hpp"
#include "torsionx/poly.hpp"
#include "torsionx/prime_field.hpp"

namespace torsionx {
namespace fpoly {

using Fp = PrimeField;
using FpVec = PolyVec<Fp>;

inline FpVec powmod_mpz(const Fp& K, FpVec base, const mpz_class& e, const FpVec& m) {
    FpVec r = poly::constant(K, K.one());
    base = poly::rem(K, base, m);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        r = poly::mulmod(K, r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = poly::mulmod(K, r, base, m);
    }
    return r;
}

// Distinct-degree decomposition of a squarefree monic f: list of
// (d, product of the irreducible factors of degree d), ascending d.
inline std::vector<std::pair<int, FpVec>> ddf(const Fp& K, FpVec f) {
    std::vector<std::pair<int, FpVec>> out;
    f = poly::monic(K, f);
    auto h = poly::rem(K, poly::xpow(K, 1), f);
    auto x = h;
    int d = 0;
    while (poly::degree<Fp>(f) >= 2 * (d + 1)) {
        ++d;
        h = poly::powmod(K, h, K.modulus(), f);
        auto g = poly::gcd(K, poly::sub(K, h, x), f);
        if (poly::degree<Fp>(g) > 0) {
            out.emplace_back(d, g);
            f = poly::exact_div(K, f, g);
            h = poly::rem(K, h, f);
        }
    }
    if (poly::degree<Fp>(f) > 0) out.emplace_back(poly::degree<Fp>(f), f);
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (p odd).  Deterministically
// seeded so identical inputs factor identically.
inline void edf(const Fp& K, const FpVec& f, int d, u64 seed, std::vector<FpVec>& out) {
    int df = poly::degree<Fp>(f);
    if (df == d) {
        out.push_back(poly::monic(K, f));
        return;
    }
    mpz_class q(K.modulus());
    mpz_class e;
    mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), (unsigned long)d);
    e = (e - 1) / 2;
    SplitMix64 rng(derive_seed(seed, 0xedf0 + (u64)df));
    for (;;) {
        FpVec r((size_t)df, K.zero());
        for (auto& c : r) c = K.from_int(rng.next() % K.modulus());
        poly::normalize(K, r);
        if (poly::degree<Fp>(r) < 1) continue;
        auto s = powmod_mpz(K, r, e, f);
        auto g = poly::gcd(K, poly::sub(K, s, poly::constant(K, K.one())), f);
        int dg = poly::degree<Fp>(g);
        if (dg > 0 && dg < df) {
            edf(K, g, d, rng.next(), out);
            edf(K, poly::exact_div(K, f, g), d, rng.next(), out);
            return;
        }
    }
}

// Canonical comparison key: (degree, coefficient integers high to low).
inline bool poly_less(const Fp& K, const FpVec& a, const FpVec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;) {
        u64 x = K.to_int(a[i]), y = K.to_int(b[i]);
        if (x != y) return x < y;
    }
    return false;
}

// Irreducible factors of a squarefree monic f, canonically sorted.
inline std::vector<FpVec> factor_squarefree(const Fp& K, const FpVec& f, u64 seed) {
    std::vector<FpVec> out;
    if (poly::degree<Fp>(f) < 1) return out;
    for (auto& [d, part] : ddf(K, f)) edf(K, part, d, derive_seed(seed, (u64)d), out);
    std::sort(out.begin(), out.end(), [&](const FpVec& a, const FpVec& b) { return poly_less(K, a, b); });
    return out;
}

// Roots in F_p of a squarefree f, ascending as integers.
inline std::vector<u64> roots(const Fp& K, const FpVec& f, u64 seed) {
    std::vector<u64> out;
    if (poly::degree<Fp>(f) < 1) return out;
    auto xq = poly::powmod(K, poly::xpow(K, 1), K.modulus(), f);
    auto lin = poly::gcd(K, poly::sub(K, xq, poly::xpow(K, 1)), f);
    if (poly::degree<Fp>(lin) < 1) return out;
    std::vector<FpVec> facs;
    edf(K, lin, 1, derive_seed(seed, 0x4007), facs);
    for (auto& g : facs) out.push_back(K.to_int(K.neg(g[0])));
    std::sort(out.begin(), out.end());
    return out;
}

enum class RootScope { closure, base_field };

// Number of distinct roots, either over the algebraic closure (degree of the
// squarefree part) or in F_p itself (via gcd with x^p - x).
inline int count_distinct_roots(const Fp& K, const FpVec& f, RootScope scope) {
    if (f.empty()) throw std::domain_error("count_distinct_roots: zero polynomial");
    if (scope == RootScope::closure) {
        if ((u64)poly::degree<Fp>(f) >= K.modulus())
            throw std::domain_error("count_distinct_roots: characteristic hazard (p <= deg f)");
        return poly::degree<Fp>(poly::squarefree_part(K, f));
    }
    auto xq = poly::powmod(K, poly::xpow(K, 1), K.modulus(), f);
    return poly::degree<Fp>(poly::gcd(K, poly::sub(K, xq, poly::xpow(K, 1)), f));
}

}  // namespace fpoly
}  // namespace torsionx

#endif
