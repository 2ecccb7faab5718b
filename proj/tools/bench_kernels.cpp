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

// Benchmark of the data-parallel kernels against their serial reference
// paths, plus the two multiplication and resultant routes.

#include <chrono>
#include <cstdio>

#include "torsionx/bipoly.hpp"
#include "torsionx/fast_poly.hpp"
#include "torsionx/reports.hpp"
#include "torsionx/search.hpp"

#ifdef TORSIONX_HAVE_OPENMP
#include <omp.h>
#endif

using namespace torsionx;
using Fp = PrimeField;
using FpVec = PolyVec<Fp>;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

template <class F>
double timed(F&& f) {
    double t0 = now_ms();
    f();
    return now_ms() - t0;
}

}  // namespace

int main(int argc, char** argv) {
    int caps = argc > 1 ? std::atoi(argv[1]) : 10;
#ifdef TORSIONX_HAVE_OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; the parallel rows equal the serial reference\n");
#endif

    PrimeStream ps(2, 26);
    Fp K(ps.next());
    SplitMix64 rng(1);

    std::printf("\n-- polynomial multiplication (degree d x d) --\n");
    for (int d : {256, 1024, 4096, 16384}) {
        auto a = poly::random_poly(K, rng, d);
        auto b = poly::random_poly(K, rng, d);
        FpVec r1, r2;
        double t_school = timed([&] { r1 = poly::mul(K, a, b); });
        double t_ntt = timed([&] { r2 = ntt::mul(K, a, b); });
        std::printf("d=%6d  schoolbook %9.2f ms   ntt %7.2f ms   agree %d\n", d, t_school, t_ntt,
                    (int)poly::eq(K, r1, r2));
    }

    std::printf("\n-- gcd of polynomials with a planted degree-50 factor --\n");
    for (int d : {2000, 8000, 32000}) {
        auto g = poly::random_poly(K, rng, 50);
        auto a = ntt::mul(K, g, poly::random_poly(K, rng, d));
        auto b = ntt::mul(K, g, poly::random_poly(K, rng, d));
        FpVec g1, g2;
        double t_school = timed([&] { g1 = poly::gcd(K, a, b); });
        double t_fast = timed([&] { g2 = fpoly::fast_gcd(K, a, b); });
        std::printf("d=%6d  euclid %10.2f ms   hgcd %8.2f ms   agree %d\n", d, t_school, t_fast,
                    (int)poly::eq(K, g1, g2));
    }

    std::printf("\n-- resultant routes: subresultant PRS vs evaluation-interpolation --\n");
    for (auto [m, n] : {std::pair<int, int>{3, 5}, {5, 5}}) {
        double t_prs = 0, t_interp = 0;
        FpVec prs, interp;
        t_prs = timed([&] {
            auto h1 = bipoly::parametric_divpoly(K, 1, m);
            auto h2 = bipoly::parametric_divpoly(K, 2, n);
            prs = bipoly::subresultant_resultant(K, h1, h2);
        });
        search::SearchConfig cfg;
        cfg.level_mode = search::LevelMode::order_dividing;
        cfg.seed = 44;
        search::PairResult prof;
        t_interp = timed([&] { prof = search::resultant_profile(cfg, K.modulus(), m, n); });
        std::printf("(m,n)=(%d,%d)  prs %9.2f ms   interp %9.2f ms   agree %d\n", m, n, t_prs, t_interp,
                    (int)poly::eq(K, poly::monic(K, prs), poly::monic(K, prof.R)));
    }

    std::printf("\n-- search scan: OpenMP kernels vs serial reference (caps %d) --\n", caps);
    {
        search::SearchConfig cfg;
        cfg.m_max = caps;
        cfg.n_max = caps;
        cfg.prime_count = 1;
        cfg.seed = 7;
        cfg.parallel = true;
        search::SearchReport r1, r2;
        double t_par = timed([&] { r1 = search::run_search(cfg); });
        cfg.parallel = false;
        double t_ser = timed([&] { r2 = search::run_search(cfg); });
        bool agree = r1.scans[0].factors.size() == r2.scans[0].factors.size();
        for (size_t i = 0; agree && i < r1.scans[0].factors.size(); ++i)
            agree = r1.scans[0].factors[i].factor == r2.scans[0].factors[i].factor;
        std::printf("parallel %9.2f ms   serial %9.2f ms   speedup %.2fx   identical output %d\n", t_par, t_ser,
                    t_ser / t_par, (int)agree);
    }

    std::printf("\n-- intersect driver: OpenMP over primes vs serial reference --\n");
    {
        // the record pair, four verification primes
        ExactField field;
        RationalField Q;
        field.defining = poly::from_ints(Q, {81, 0, 0, 0, 174, 0, 0, 0, 1});
        ExactPair pair;
        pair.field = field;
        auto mkcover = [&](std::vector<std::vector<mpq_class>> params,
                           std::vector<std::vector<mpq_class>> branch) {
            ExactCover c;
            c.tag = ModelTag::even_quartic;
            for (auto& p : params) c.params.push_back(ExactValue{p});
            for (size_t i = 0; i < 4; ++i) c.branch[i] = ExactP1{false, ExactValue{branch[i]}};
            c.origin = 0;
            return c;
        };
        mpq_class q5827(-58, 27), q181(-1, 81), q583(-58, 3), q19(-1, 9), q589(-58, 9), q127(-1, 27);
        pair.c1 = mkcover({{0, 0, 1}, {0, 0, q5827, 0, 0, 0, q181}},
                          {{0, 1}, {0, -1}, {0, 0, 0, q5827, 0, 0, 0, q181}, {0, 0, 0, -q5827, 0, 0, 0, -q181}});
        pair.c2 = mkcover({{0, 0, mpq_class(1, 9)}, {0, 0, q583, 0, 0, 0, q19}},
                          {{0, mpq_class(1, 3)},
                           {0, mpq_class(-1, 3)},
                           {0, 0, 0, q589, 0, 0, 0, q127},
                           {0, 0, 0, -q589, 0, 0, 0, -q127}});
        IntersectReport r1, r2;
        double t_par = timed([&] { r1 = common_torsion_x(pair, 48, 4, 99, true); });
        double t_ser = timed([&] { r2 = common_torsion_x(pair, 48, 4, 99, false); });
        std::printf("parallel %9.2f ms   serial %9.2f ms   speedup %.2fx   identical output %d\n", t_par, t_ser,
                    t_ser / t_par, (int)(r1.count == r2.count && r1.profile == r2.profile));
    }
    return 0;
}
