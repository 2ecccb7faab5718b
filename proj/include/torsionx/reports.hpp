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

#ifndef TORSIONX_REPORTS_HPP
#define TORSIONX_REPORTS_HPP

#include <algorithm>

#include "torsionx/exact.hpp"
#include "torsionx/crosscheck.hpp"

#ifdef TORSIONX_HAVE_OPENMP
#include <omp.h>
#endif

namespace torsionx {

// One common x-value class: an irreducible factor over F_p (or the point at
// infinity) with the minimal orders found on both sides.
struct ElemEvidence {
    bool is_inf = false;
    int degree = 1;                 // number of conjugate x-values in the class
    std::vector<u64> factor;        // canonical integer coefficients
    u64 order1 = 0, order2 = 0;
};

struct PrimeEvidence {
    u64 p = 0;
    u64 root = 0;  // image of the field generator
    int count = 0;
    std::vector<ElemEvidence> elems;
};

// Order profile entry used for cross-prime agreement: one entry per
// geometric point class over the closure (factors contribute their degree in
// copies, which is Galois-stable; the factor degrees themselves depend on
// the prime).
using ProfileEntry = std::array<u64, 3>;  // (is_inf, order1, order2)

struct IntersectReport {
    u64 bound = 0;
    int count = -1;
    bool consistent = false;
    std::vector<ProfileEntry> profile;
    std::vector<PrimeEvidence> evidence;
    std::string status;  // "ok" or a diagnosis
};

namespace detail {

// Per-prime intersection with per-class minimal orders on both sides.
inline PrimeEvidence intersect_one_prime(const PrimeField& K, const CoverPair<PrimeField>& pair, int N, u64 seed) {
    PrimeEvidence ev;
    ev.p = K.modulus();
    CoverTorsion<PrimeField> t1(K, pair.c1, N), t2(K, pair.c2, N);
    auto common = common_x_set(K, t1, t2, N);
    ev.count = common.count;
    auto divisors = divisors_of(N);
    auto facs = fpoly::factor_squarefree(K, common.points.affine, derive_seed(seed, K.modulus()));
    for (auto& h : facs) {
        ElemEvidence e;
        e.degree = poly::degree<PrimeField>(h);
        for (auto c : h) e.factor.push_back(K.to_int(c));
        for (int d : divisors) {
            if (!e.order1 && poly::rem(K, t1.level_set(d).affine, h).empty()) e.order1 = (u64)d;
            if (!e.order2 && poly::rem(K, t2.level_set(d).affine, h).empty()) e.order2 = (u64)d;
            if (e.order1 && e.order2) break;
        }
        ev.elems.push_back(std::move(e));
    }
    if (common.points.inf) {
        ElemEvidence e;
        e.is_inf = true;
        e.degree = 1;
        for (int d : divisors) {
            if (!e.order1 && t1.level_set(d).inf) e.order1 = (u64)d;
            if (!e.order2 && t2.level_set(d).inf) e.order2 = (u64)d;
            if (e.order1 && e.order2) break;
        }
        ev.elems.push_back(std::move(e));
    }
    std::sort(ev.elems.begin(), ev.elems.end(), [](const ElemEvidence& a, const ElemEvidence& b) {
        return std::tie(a.is_inf, a.degree, a.order1, a.order2, a.factor) <
               std::tie(b.is_inf, b.degree, b.order1, b.order2, b.factor);
    });
    return ev;
}

inline std::vector<ProfileEntry> profile_of(const PrimeEvidence& ev) {
    std::vector<ProfileEntry> pr;
    for (auto& e : ev.elems)
        for (int i = 0; i < e.degree; ++i) pr.push_back({e.is_inf ? 1ULL : 0ULL, e.order1, e.order2});
    std::sort(pr.begin(), pr.end());
    return pr;
}

}  // namespace detail

// Bounded common torsion x-coordinates of an exact pair, verified at
// `prime_count` good primes; agreement is on the count and the order
// profile.
inline IntersectReport common_torsion_x(const ExactPair& pr, int N, int prime_count, u64 seed, bool parallel = true) {
    if (N < 2) throw std::invalid_argument("common_torsion_x: N >= 2 required");
    IntersectReport rep;
    rep.bound = (u64)N;
    ExactContext ctx(pr.field);
    auto collected = collect_good_primes<CoverPair<PrimeField>>(
        ctx, seed, prime_count,
        [&](const PrimeField& K, PrimeField::Elem root, u64, u64) -> std::optional<CoverPair<PrimeField>> {
            auto rp = reduce_pair(ctx, K, root, pr);
            if (!rp) return std::nullopt;
            auto inv = invariant_pair(K, *rp);
            if (inv.excluded) throw std::domain_error("excluded pair: identical branch sets");
            return rp;
        });
    rep.evidence.resize(collected.size());
#ifdef TORSIONX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long i = 0; i < (long)collected.size(); ++i) {
        auto& [p, root, cpair] = collected[(size_t)i];
        PrimeField K(p);
        rep.evidence[(size_t)i] = detail::intersect_one_prime(K, cpair, N, seed);
        rep.evidence[(size_t)i].root = root;
    }
    rep.profile = detail::profile_of(rep.evidence[0]);
    rep.count = rep.evidence[0].count;
    rep.consistent = true;
    for (auto& ev : rep.evidence) {
        if (ev.count != rep.count || detail::profile_of(ev) != rep.profile) {
            rep.consistent = false;
            rep.status = "prime disagreement on count or order profile";
        }
    }
    if (rep.consistent) rep.status = "ok";
    return rep;
}

// ---------------------------------------------------------------------------
// Packet reports
// ---------------------------------------------------------------------------

struct PacketPrimeEvidence {
    u64 p = 0;
    u64 root = 0;
    int iprime = 0;
    int iprime_at_zero_inf = 0;
    int formula_value = 0;
    int point_count = 0;
    bool has_inf = false;
    std::vector<u64> packet_affine;  // canonical coefficients of the packet x-polynomial
    PrimeEvidence iprime_evidence;
};

struct PacketReport {
    u64 bound = 0;
    int size = -1;
    int iprime = -1;
    bool consistent = false;
    std::vector<PacketPrimeEvidence> evidence;
    std::string status;
};

inline PacketReport packet_report(const ExactGenus2& g, int N, int prime_count, u64 seed, bool parallel = true) {
    PacketReport rep;
    rep.bound = (u64)N;
    ExactContext ctx(g.field);
    struct Inst {
        Genus2Curve<PrimeField> curve;
        BiellNormalization<PrimeField> norm;
        CoverPair<PrimeField> pair;
    };
    auto collected = collect_good_primes<Inst>(
        ctx, seed, prime_count, [&](const PrimeField& K, PrimeField::Elem root, u64 p, u64) -> std::optional<Inst> {
            auto rg = reduce_genus2(ctx, K, root, g, derive_seed(seed, p));
            if (!rg) return std::nullopt;
            if (!rg->curve.involution) throw std::domain_error("packet_report: no bielliptic structure");
            auto norm = normalize_bielliptic(K, rg->curve);
            if (norm.needs_extension) return std::nullopt;  // next prime
            auto roots = fpoly::roots(K, norm.cubic, derive_seed(seed, p ^ 0x9));
            if (roots.size() != 3) return std::nullopt;
            auto pair =
                split_to_pair_roots(K, K.from_int(roots[0]), K.from_int(roots[1]), K.from_int(roots[2]));
            return Inst{rg->curve, norm, pair};
        });
    rep.evidence.resize(collected.size());
#ifdef TORSIONX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long i = 0; i < (long)collected.size(); ++i) {
        auto& [p, root, inst] = collected[(size_t)i];
        PrimeField K(p);
        CoverTorsion<PrimeField> t1(K, inst.pair.c1, N), t2(K, inst.pair.c2, N);
        auto pk = packet_pullback(K, inst.curve, inst.norm, t1, t2, N);
        PacketPrimeEvidence ev;
        ev.p = p;
        ev.root = root;
        ev.iprime = pk.iprime.count;
        ev.iprime_at_zero_inf = pk.iprime_at_zero_inf;
        ev.formula_value = pk.formula_value;
        ev.point_count = pk.point_count;
        ev.has_inf = pk.packet_has_inf;
        for (auto c : pk.packet_affine_x) ev.packet_affine.push_back(K.to_int(c));
        ev.iprime_evidence = detail::intersect_one_prime(K, inst.pair, N, seed);
        rep.evidence[(size_t)i] = std::move(ev);
    }
    rep.size = rep.evidence[0].point_count;
    rep.iprime = rep.evidence[0].iprime;
    rep.consistent = true;
    for (auto& ev : rep.evidence) {
        if (ev.point_count != rep.size || ev.iprime != rep.iprime || ev.formula_value != ev.point_count) {
            rep.consistent = false;
            rep.status = "prime disagreement or fiber-formula mismatch";
        }
    }
    if (rep.consistent) rep.status = "ok";
    return rep;
}

}  // namespace torsionx

#endif
