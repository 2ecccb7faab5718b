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

#ifndef TORSIONX_SEARCH_HPP
#define TORSIONX_SEARCH_HPP

#include <gmpxx.h>

#include <atomic>
#include <map>
#include <string>

#include "torsionx/factor.hpp"
#include "torsionx/fast_poly.hpp"
#include "torsionx/rationals.hpp"
#include "torsionx/s3_family.hpp"

#ifdef TORSIONX_HAVE_OPENMP
#include <omp.h>
#endif

namespace torsionx {
namespace search {

using Fp = PrimeField;
using FpVec = PolyVec<Fp>;

enum class LevelMode { exact_order, order_dividing };

struct SearchConfig {
    std::string family = "s3";
    int m_max = 24, n_max = 24;
    int prime_count = 2;
    int prime_bits_lo = 59, prime_bits_hi = 62;
    u64 seed = 1;
    bool exact_mode = false;  // CRT-lift detected factors
    LevelMode level_mode = LevelMode::exact_order;
    int verify_points = 8;
    int min_grid_log2 = 8;
    int max_grid_log2 = 19;
    bool parallel = true;
};

// R_{m,n} data for one prime.
struct PairResult {
    int m = 0, n = 0;
    bool identically_zero = false;
    int degree = -1;
    std::vector<int> yun_degrees;  // squarefree decomposition degrees
    FpVec R;                       // interpolated resultant
    FpVec sf;                      // squarefree part, excluded loci stripped
};

struct CommonFactor {
    FpVec factor;  // monic
    std::vector<std::pair<int, int>> witnesses;
};

struct PrimeScan {
    u64 p = 0;
    u64 coset = 0;
    int restarts = 0;
    std::vector<PairResult> pairs;
    FpVec excluded_locus;  // squarefree; degenerate t plus leading-coefficient loci
    std::vector<CommonFactor> factors;
};

struct LiftedFactor {
    int degree = 0;
    std::vector<std::pair<int, int>> witnesses;
    std::vector<std::string> coeffs;  // exact mode: rationals, low to high
    int stabilized_after = 0;         // primes after which the lift stopped changing
    bool lifted = false;
};

struct SearchReport {
    SearchConfig config;
    std::vector<u64> primes;
    std::vector<PrimeScan> scans;
    std::vector<LiftedFactor> factors;  // consolidated across primes
    bool consistent = true;
    std::string note;
};

// Cross-pair common-factor detection: gcd of each squarefree part with the
// product of all the others, batched through one remainder tree against
// sf^2, then pairwise gcds of the few nontrivial shared parts.
inline std::vector<CommonFactor> cross_pair_factors(const Fp& K, const std::vector<PairResult>& pairs,
                                                    bool parallel) {
    std::vector<size_t> idx;
    std::vector<FpVec> mods, mods2;
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (poly::degree<Fp>(pairs[i].sf) >= 1) {
            idx.push_back(i);
            mods.push_back(pairs[i].sf);
            mods2.push_back(ntt::mul(K, pairs[i].sf, pairs[i].sf));
        }
    }
    std::vector<CommonFactor> out;
    if (idx.size() < 2) return out;
    auto P = fpoly::product_tree_root(K, mods);
    auto rems = fpoly::remainder_tree(K, P, mods2);
    std::vector<FpVec> shared(idx.size());
#ifdef TORSIONX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long i = 0; i < (long)idx.size(); ++i) {
        // P mod sf^2 = sf * (product-of-others mod sf)
        FpVec q, r;
        fpoly::fast_divrem(K, rems[(size_t)i], mods[(size_t)i], q, r);
        shared[(size_t)i] = r.empty() ? fpoly::fast_gcd(K, mods[(size_t)i], q) : FpVec{};
    }
    (void)parallel;
    std::map<std::vector<u64>, std::vector<std::pair<int, int>>> cands;
    for (size_t i = 0; i < idx.size(); ++i) {
        if (poly::degree<Fp>(shared[i]) < 1) continue;
        for (size_t j = i + 1; j < idx.size(); ++j) {
            if (poly::degree<Fp>(shared[j]) < 1) continue;
            auto g = fpoly::fast_gcd(K, shared[i], shared[j]);
            if (poly::degree<Fp>(g) < 1) continue;
            std::vector<u64> key;
            for (auto c : g) key.push_back(K.to_int(c));
            cands.try_emplace(key);
        }
    }
    for (auto& [key, wit] : cands) {
        FpVec g;
        for (auto c : key) g.push_back(K.from_int(c));
        for (auto& pr : pairs)
            if (poly::degree<Fp>(pr.sf) >= 1 && fpoly::fast_rem(K, pr.sf, g).empty()) wit.emplace_back(pr.m, pr.n);
    }
    for (auto& [key, wit] : cands) {
        if (wit.size() < 2) continue;
        CommonFactor cf;
        for (auto c : key) cf.factor.push_back(K.from_int(c));
        cf.witnesses = wit;
        bool ok = true;  // re-verify against the full resultants
        for (auto [m, n] : wit)
            for (auto& pr : pairs)
                if (pr.m == m && pr.n == n && !pr.R.empty() && !fpoly::fast_rem(K, pr.R, cf.factor).empty())
                    ok = false;
        if (ok) out.push_back(std::move(cf));
    }
    std::sort(out.begin(), out.end(), [&](const CommonFactor& a, const CommonFactor& b) {
        if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
        return fpoly::poly_less(K, a.factor, b.factor);
    });
    return out;
}

namespace detail {

struct PairState {
    int m, n;
    std::vector<u64> values;
    std::vector<u64> verify;
    FpVec R;
    bool done = false;
};

// One full scan modulo one prime.  The resultants R_{m,n}(t) are recovered
// by evaluation-interpolation on nested NTT cosets: each sample builds both
// parametric curves at t0, runs the division-polynomial machinery, and takes
// a univariate resultant; interpolation completes per pair once the values
// reproduce the interpolant at off-grid verification points.
inline PrimeScan scan_one_prime(const SearchConfig& cfg, u64 p, u64 coset_seed) {
    Fp K(p);
    PrimeScan out;
    out.p = p;
    const bool exact = cfg.level_mode == LevelMode::exact_order;
    const int m_cap = cfg.m_max, n_cap = cfg.n_max;

    for (int restart = 0;; ++restart) {
        if (restart > 4) throw std::runtime_error("search: too many grid restarts (bad prime?)");
        out.restarts = restart;
        out.factors.clear();
        ntt::EvalGrid grid(K, std::min(cfg.max_grid_log2, K.two_adicity() - 1),
                           coset_seed + 1000003ULL * (u64)restart);
        out.coset = K.to_int(grid.coset());

        std::vector<PairState> st;
        for (int m = 3; m <= m_cap; ++m)
            for (int n = 3; n <= n_cap; ++n) st.push_back({m, n, {}, {}, {}, false});

        // off-grid verification points; side-2 leading coefficients are
        // recorded there too so the excluded-locus interpolation below can
        // be validated before it is allowed to strip anything
        SplitMix64 vrng(derive_seed(cfg.seed, 0xf00d ^ p));
        std::vector<u64> vpoints;
        std::vector<std::vector<u64>> vvalues(st.size());
        std::vector<std::vector<u64>> vlc((size_t)n_cap + 1);
        while ((int)vpoints.size() < cfg.verify_points) {
            auto tv = K.from_int(vrng.next() % p);
            auto lv = s3_levels(K, tv, m_cap, n_cap, exact);
            if (!lv) continue;
            vpoints.push_back(tv);
            for (size_t i = 0; i < st.size(); ++i) {
                const auto& A = exact ? lv->exact1[(size_t)st[i].m] : lv->div1[(size_t)st[i].m];
                const auto& B = exact ? lv->exact2[(size_t)st[i].n] : lv->div2[(size_t)st[i].n];
                vvalues[i].push_back((A.empty() || B.empty()) ? 0 : poly::resultant(K, A, B));
            }
            for (int n = 2; n <= n_cap; ++n) {
                const auto& B = exact ? lv->exact2[(size_t)n] : lv->div2[(size_t)n];
                vlc[(size_t)n].push_back(B.empty() ? 0 : B.back());
            }
        }
        for (size_t i = 0; i < st.size(); ++i) st[i].verify = vvalues[i];

        std::vector<std::vector<u64>> lc2((size_t)n_cap + 1);
        const size_t lc_samples = size_t(1) << std::min(cfg.max_grid_log2, 12);

        size_t ndone = 0;
        int kmax = std::min(cfg.max_grid_log2, K.two_adicity() - 1);
        size_t have = 0;
        std::vector<int> deg1((size_t)m_cap + 1, -2), deg2((size_t)n_cap + 1, -2);
        std::atomic<bool> grid_bad{false};
        for (int s = cfg.min_grid_log2; s <= kmax && ndone < st.size(); ++s) {
            size_t target = size_t(1) << s;
            int active_m = 3, active_n = 3;
            std::vector<char> need1((size_t)m_cap + 1, 0), need2((size_t)n_cap + 1, 0);
            for (auto& ps : st)
                if (!ps.done) {
                    active_m = std::max(active_m, ps.m);
                    active_n = std::max(active_n, ps.n);
                    need1[(size_t)ps.m] = 1;
                    need2[(size_t)ps.n] = 1;
                }
            bool want_lc = have < lc_samples;
            if (want_lc) {
                // keep every side-2 level alive for the locus data
                active_n = n_cap;
                for (int n = 2; n <= n_cap; ++n) need2[(size_t)n] = 1;
            }
            for (auto& ps : st)
                if (!ps.done) ps.values.resize(target);
            std::vector<std::vector<u64>> lcrow((size_t)n_cap + 1);
            if (want_lc)
                for (int n = 2; n <= n_cap; ++n) lcrow[(size_t)n].assign(target - have, 0);

            std::vector<u64> pts(target - have);
            for (size_t k = have; k < target; ++k) pts[k - have] = grid.point((u64)k);

#ifdef TORSIONX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (cfg.parallel)
#endif
            for (long kk = 0; kk < (long)pts.size(); ++kk) {
                if (grid_bad.load(std::memory_order_relaxed)) continue;
                std::optional<S3Levels<Fp>> lv;
                try {
                    lv = s3_levels(K, pts[(size_t)kk], active_m, active_n, exact, need1, need2);
                } catch (const std::exception&) {
                    lv = std::nullopt;
                }
                if (!lv) {
                    grid_bad.store(true, std::memory_order_relaxed);
                    continue;
                }
                if (want_lc) {
                    for (int n = 2; n <= n_cap; ++n) {
                        const auto& B = exact ? lv->exact2[(size_t)n] : lv->div2[(size_t)n];
                        lcrow[(size_t)n][(size_t)kk] = B.empty() ? 0 : B.back();
                    }
                }
                for (auto& ps : st) {
                    if (ps.done) continue;
                    const auto& A = exact ? lv->exact1[(size_t)ps.m] : lv->div1[(size_t)ps.m];
                    const auto& B = exact ? lv->exact2[(size_t)ps.n] : lv->div2[(size_t)ps.n];
                    ps.values[have + (size_t)kk] = poly::resultant(K, A, B);
                }
            }
            if (grid_bad.load()) break;  // restart with a fresh coset
            // degree structure must be constant on the grid
            {
                auto lv0 = s3_levels(K, pts[0], active_m, active_n, exact, need1, need2);
                for (int m = 3; m <= active_m; ++m) {
                    if (!need1[(size_t)m]) continue;
                    int d = poly::degree<Fp>(exact ? lv0->exact1[(size_t)m] : lv0->div1[(size_t)m]);
                    if (deg1[(size_t)m] == -2)
                        deg1[(size_t)m] = d;
                    else if (deg1[(size_t)m] != d)
                        grid_bad.store(true);
                }
                for (int n = 3; n <= active_n; ++n) {
                    if (!need2[(size_t)n]) continue;
                    int d = poly::degree<Fp>(exact ? lv0->exact2[(size_t)n] : lv0->div2[(size_t)n]);
                    if (deg2[(size_t)n] == -2)
                        deg2[(size_t)n] = d;
                    else if (deg2[(size_t)n] != d)
                        grid_bad.store(true);
                }
                if (grid_bad.load()) break;
            }
            if (want_lc) {
                for (int n = 2; n <= n_cap; ++n)
                    lc2[(size_t)n].insert(lc2[(size_t)n].end(), lcrow[(size_t)n].begin(), lcrow[(size_t)n].end());
            }
            have = target;

#ifdef TORSIONX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
#endif
            for (long i = 0; i < (long)st.size(); ++i) {
                auto& ps = st[(size_t)i];
                if (ps.done) continue;
                auto cand = grid.interpolate_prefix(ps.values, s);
                bool okv = true;
                for (size_t j = 0; j < vpoints.size() && okv; ++j)
                    okv = K.eq(poly::eval(K, cand, vpoints[j]), ps.verify[j]);
                if (okv) {
                    ps.R = std::move(cand);
                    ps.done = true;
                    ps.values.clear();
                    ps.values.shrink_to_fit();
                }
            }
            ndone = 0;
            for (auto& ps : st)
                if (ps.done) ++ndone;
        }
        if (grid_bad.load()) continue;  // coset restart
        if (ndone < st.size()) throw std::runtime_error("search: grid cap reached before stabilization");

        // excluded-root locus: family degeneracy t = ±2 plus the verified
        // leading-coefficient loci of side 2
        FpVec excl = poly::from_ints(K, {-4, 0, 1});
        for (int n = 2; n <= n_cap; ++n) {
            auto& vals = lc2[(size_t)n];
            if (vals.empty()) continue;
            int s = 0;
            while ((size_t(1) << (s + 1)) <= vals.size()) ++s;
            auto lcpoly = grid.interpolate_prefix(vals, s);
            bool verified = true;
            for (size_t j = 0; j < vpoints.size(); ++j)
                if (!K.eq(poly::eval(K, lcpoly, vpoints[j]), vlc[(size_t)n][j])) verified = false;
            if (verified && poly::degree<Fp>(lcpoly) >= 1)
                excl = poly::mul(K, excl, poly::squarefree_part(K, lcpoly));
        }
        out.excluded_locus = fpoly::fast_squarefree_part(K, excl);

        // per-pair profiles
        out.pairs.assign(st.size(), {});
#ifdef TORSIONX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
#endif
        for (long i = 0; i < (long)st.size(); ++i) {
            auto& ps = st[(size_t)i];
            PairResult pr;
            pr.m = ps.m;
            pr.n = ps.n;
            pr.degree = poly::degree<Fp>(ps.R);
            pr.R = ps.R;
            if (pr.degree < 0) {
                pr.identically_zero = true;
            } else if (pr.degree == 0) {
                pr.sf = poly::constant(K, K.one());
            } else {
                auto sf = fpoly::fast_squarefree_part(K, ps.R);
                for (;;) {
                    auto g = fpoly::fast_gcd(K, sf, out.excluded_locus);
                    if (poly::degree<Fp>(g) < 1) break;
                    sf = poly::exact_div(K, sf, g);
                }
                pr.sf = sf;
                for (auto& comp : poly::squarefree_decomposition(K, ps.R))
                    pr.yun_degrees.push_back(poly::degree<Fp>(comp));
            }
            out.pairs[(size_t)i] = std::move(pr);
        }

        out.factors = cross_pair_factors(K, out.pairs, cfg.parallel);
        return out;
    }
}

}  // namespace detail

namespace detail {

inline void consolidate_factors(SearchReport& rep);

}  // namespace detail

inline SearchReport run_search(const SearchConfig& cfg) {
    if (cfg.family != "s3") throw std::invalid_argument("search: only the s3 family is implemented");
    if (cfg.m_max < 3 || cfg.n_max < 3) throw std::invalid_argument("search: caps must be at least 3");
    SearchReport rep;
    rep.config = cfg;
    PrimeStream ps(derive_seed(cfg.seed, 0x5ea4c), 26, cfg.prime_bits_lo, cfg.prime_bits_hi);
    for (int i = 0; i < cfg.prime_count; ++i) rep.primes.push_back(ps.next());
    rep.scans.resize(rep.primes.size());
    for (size_t i = 0; i < rep.primes.size(); ++i)
        rep.scans[i] = detail::scan_one_prime(cfg, rep.primes[i], derive_seed(cfg.seed, 0xc0517 + i));

    for (size_t i = 1; i < rep.scans.size(); ++i) {
        for (size_t k = 0; k < rep.scans[0].pairs.size(); ++k)
            if (rep.scans[i].pairs[k].degree != rep.scans[0].pairs[k].degree) {
                rep.consistent = false;
                rep.note = "R-degree disagreement across primes";
            }
    }

    detail::consolidate_factors(rep);
    // exact mode without proven height bounds: double the prime count once
    // when a surviving factor has not stabilized, and report the prime count
    // at which it did rather than claiming certification
    if (cfg.exact_mode && rep.consistent) {
        bool unstable = false;
        for (auto& lf : rep.factors)
            if (!lf.lifted || lf.stabilized_after == 0) unstable = true;
        if (unstable) {
            for (int i = 0; i < cfg.prime_count; ++i) {
                rep.primes.push_back(ps.next());
                rep.scans.push_back(
                    detail::scan_one_prime(cfg, rep.primes.back(), derive_seed(cfg.seed, 0xc0517 + rep.primes.size())));
            }
            rep.factors.clear();
            detail::consolidate_factors(rep);
            if (!rep.note.empty()) rep.note += "; ";
            rep.note += "exact lift was unstable; prime count doubled";
        }
    }
    return rep;
}

namespace detail {

inline void consolidate_factors(SearchReport& rep) {
    const auto& cfg = rep.config;
    // factors surviving at every prime (matched by witness set and degree)
    if (!rep.scans.empty()) {
        for (auto& cf : rep.scans[0].factors) {
            bool everywhere = true;
            for (size_t i = 1; i < rep.scans.size(); ++i) {
                bool found = false;
                for (auto& cg : rep.scans[i].factors)
                    if (cg.witnesses == cf.witnesses && cg.factor.size() == cf.factor.size()) found = true;
                everywhere = everywhere && found;
            }
            if (!everywhere) continue;
            LiftedFactor lf;
            lf.degree = (int)cf.factor.size() - 1;
            lf.witnesses = cf.witnesses;
            if (cfg.exact_mode) {
                std::vector<std::vector<CrtInput>> coeff_residues(cf.factor.size());
                for (size_t i = 0; i < rep.scans.size(); ++i) {
                    const CommonFactor* match = nullptr;
                    for (auto& cg : rep.scans[i].factors)
                        if (cg.witnesses == cf.witnesses && cg.factor.size() == cf.factor.size()) match = &cg;
                    if (!match) break;
                    Fp Ki(rep.primes[i]);
                    for (size_t c = 0; c < cf.factor.size(); ++c)
                        coeff_residues[c].push_back({mpz_class((unsigned long)Ki.to_int(match->factor[c])),
                                                     mpz_class((unsigned long)rep.primes[i])});
                }
                std::vector<std::string> prev;
                for (size_t k = 1; k <= rep.scans.size(); ++k) {
                    std::vector<std::string> lift;
                    bool ok = true;
                    for (auto& residues : coeff_residues) {
                        if (residues.size() < k) {
                            ok = false;
                            break;
                        }
                        std::vector<CrtInput> in(residues.begin(), residues.begin() + (long)k);
                        mpz_class M;
                        auto r = crt_combine(in, &M);
                        auto q = rational_reconstruct(r, M);
                        if (!q) {
                            ok = false;
                            break;
                        }
                        lift.push_back(rational_to_string(*q));
                    }
                    if (ok) {
                        if (lift == prev && lf.stabilized_after == 0) lf.stabilized_after = (int)k;
                        prev = lift;
                        lf.coeffs = lift;
                        lf.lifted = true;
                    }
                }
            }
            rep.factors.push_back(std::move(lf));
        }
    }
}

}  // namespace detail

// Resultant profile for a single (m, n).
inline PairResult resultant_profile(const SearchConfig& cfg, u64 p, int m, int n) {
    SearchConfig c = cfg;
    c.m_max = std::max(3, m);
    c.n_max = std::max(3, n);
    auto scan = detail::scan_one_prime(c, p, derive_seed(cfg.seed, 0xc0517));
    for (auto& pr : scan.pairs)
        if (pr.m == m && pr.n == n) return pr;
    throw std::logic_error("resultant_profile: pair not found");
}

}  // namespace search
}  // namespace torsionx

#endif
