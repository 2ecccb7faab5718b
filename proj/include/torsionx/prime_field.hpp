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

#ifndef TORSIONX_PRIME_FIELD_HPP
#define TORSIONX_PRIME_FIELD_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "torsionx/util.hpp"

namespace torsionx {

// F_p for an odd prime p < 2^62.  Elements are stored in Montgomery form
// (R = 2^64); from_int/to_int convert at the boundary.  All operations are
// const and the object is safe to share across threads.
class PrimeField {
   public:
    using Elem = u64;  // Montgomery representation

    explicit PrimeField(u64 p) : p_(p) {
        if (p < 3 || !(p & 1) || (p >> 62) != 0) throw std::invalid_argument("PrimeField: need odd prime < 2^62");
        // n' = -p^{-1} mod 2^64 via Newton iteration
        u64 inv = p;
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        ninv_ = ~inv + 1;  // -inv
        // r2 = 2^128 mod p
        u128 r = (u128)1 << 64;
        r %= p;
        r2_ = (u64)((r * r) % p);
        one_ = redc((u128)r2_);  // = 2^64 mod p
    }

    u64 modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return one_; }

    Elem from_int(u64 x) const { return redc((u128)(x % p_) * r2_); }
    Elem from_int(i64 x) const {
        i64 m = x % (i64)p_;
        if (m < 0) m += (i64)p_;
        return from_int((u64)m);
    }
    u64 to_int(Elem a) const { return redc((u128)a); }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem add(Elem a, Elem b) const {
        u64 s = a + b;
        if (s >= p_ || s < a) s -= p_;
        return s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a ? p_ - a : 0; }
    Elem mul(Elem a, Elem b) const { return redc((u128)a * b); }
    Elem sqr(Elem a) const { return mul(a, a); }

    Elem pow(Elem a, u64 e) const {
        Elem r = one_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("PrimeField: division by zero");
        return pow(a, p_ - 2);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    // Legendre symbol of a (0 for a = 0).
    int legendre(Elem a) const {
        if (a == 0) return 0;
        Elem t = pow(a, (p_ - 1) >> 1);
        return eq(t, one_) ? 1 : -1;
    }

    // Tonelli-Shanks; deterministic non-residue search.
    std::optional<Elem> sqrt(Elem a) const {
        if (a == 0) return Elem(0);
        if (legendre(a) != 1) return std::nullopt;
        u64 q = p_ - 1;
        int s = 0;
        while (!(q & 1)) { q >>= 1; ++s; }
        if (s == 1) return pow(a, (p_ + 1) >> 2);
        Elem z = 0;
        for (u64 n = 2;; ++n) {
            z = from_int(n);
            if (legendre(z) == -1) break;
        }
        Elem c = pow(z, q);
        Elem x = pow(a, (q + 1) >> 1);
        Elem t = pow(a, q);
        int m = s;
        while (!eq(t, one_)) {
            Elem tt = t;
            int i = 0;
            while (!eq(tt, one_)) {
                tt = sqr(tt);
                ++i;
                if (i == m) return std::nullopt;  // not reached for prime p
            }
            Elem b = c;
            for (int j = 0; j < m - i - 1; ++j) b = sqr(b);
            m = i;
            c = sqr(b);
            t = mul(t, c);
            x = mul(x, b);
        }
        return x;
    }

    // Smallest k with 2^k | p - 1 (capacity for radix-2 NTT grids).
    int two_adicity() const {
        u64 q = p_ - 1;
        int s = 0;
        while (!(q & 1)) { q >>= 1; ++s; }
        return s;
    }

    // Generator of the 2^k-torsion of F_p^* (requires 2^k | p-1).
    Elem root_of_unity(int k) const {
        if (k > two_adicity()) throw std::invalid_argument("root_of_unity: 2-adicity too small");
        // g = non-residue => g^((p-1)/2^k) has exact order 2^k
        Elem g = 0;
        for (u64 n = 2;; ++n) {
            g = from_int(n);
            if (legendre(g) == -1) break;
        }
        return pow(g, (p_ - 1) >> k);
    }

   private:
    u64 p_;
    u64 ninv_;  // -p^{-1} mod 2^64
    u64 r2_;    // 2^128 mod p
    u64 one_;   // 2^64 mod p

    u64 redc(u128 t) const {
        u64 m = (u64)t * ninv_;
        u128 u = (t + (u128)m * p_) >> 64;
        u64 r = (u64)u;
        if (r >= p_) r -= p_;
        return r;
    }
};

inline std::optional<PrimeField::Elem> field_sqrt(const PrimeField& K, PrimeField::Elem a) { return K.sqrt(a); }

inline u64 field_characteristic(const PrimeField& K) { return K.modulus(); }

}  // namespace torsionx

#endif
