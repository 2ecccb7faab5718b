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

#ifndef TORSIONX_COMMANDS_HPP
#define TORSIONX_COMMANDS_HPP

#include <chrono>

#include "torsionx/io.hpp"

namespace torsionx {
namespace cmd {

using nlohmann::json;

// exit codes: 0 success, 2 parse error, 3 precondition error, 4 prime inconsistency
struct Outcome {
    json report;
    int exit_code = 0;
};

inline json run_report_shell(const std::string& command, u64 seed, json params, json payload,
                             const std::string& status, double elapsed_ms) {
    return json{{"schema", "torsionx.run_report.v1"},
                {"command", command},
                {"seed", seed},
                {"params", std::move(params)},
                {"payload", std::move(payload)},
                {"status", status},
                {"timings_ms", json{{"total", elapsed_ms}}}};
}

class Timer {
   public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

   private:
    std::chrono::steady_clock::time_point t0_;
};

// ---------------------------------------------------------------------------

inline Outcome cmd_invariants(const std::string& pair_text, u64 seed) {
    Timer t;
    auto pr = io::pair_from_json(io::parse_json(pair_text, "pair file"));
    ExactContext ctx(pr.field);
    auto NF = ctx.nf();
    auto c1 = lift_cover(ctx, NF, pr.c1);
    auto c2 = lift_cover(ctx, NF, pr.c2);
    CoverPair<NumberField> pair{c1, c2};
    auto inv = invariant_pair(NF, pair);
    json common = json::array();
    for (auto& b1 : pair.c1.branch)
        for (auto& b2 : pair.c2.branch)
            if (p1_eq(NF, b1, b2)) {
                if (p1_is_inf(NF, b1))
                    common.push_back("inf");
                else
                    common.push_back(io::value_to_json(pack_value(b1.num)));
            }
    json payload{{"type", "invariant_report"},
                 {"a", inv.common_two_torsion},
                 {"b", inv.common_klein},
                 {"excluded", inv.excluded},
                 {"common_branch", common}};
    auto rep = run_report_shell("invariants", seed, json{{"pair", "<file>"}}, payload,
                                inv.excluded ? "excluded-case" : "ok", t.ms());
    io::validate_run_report(rep);
    return {rep, inv.excluded ? 3 : 0};
}

inline Outcome cmd_intersect(const std::string& pair_text, int max_order, int primes, u64 seed, bool stability,
                             bool parallel) {
    Timer t;
    auto pr = io::pair_from_json(io::parse_json(pair_text, "pair file"));
    auto rep = common_torsion_x(pr, max_order, primes, seed, parallel);
    json payload = io::intersect_report_to_json(rep);
    if (stability) {
        auto rep2 = common_torsion_x(pr, 2 * max_order, primes, derive_seed(seed, 2), parallel);
        payload["stability"] = json{
            {"checked_at", 2 * max_order},
            {"count_at_double", rep2.count},
            {"grew", rep2.count != rep.count},
            {"caveat", "membership certified for orders dividing the bound only; growth beyond it is not excluded"}};
    }
    auto out = run_report_shell("intersect", seed,
                                json{{"max_order", max_order}, {"primes", primes}, {"stability", stability}},
                                payload, rep.status, t.ms());
    io::validate_run_report(out);
    return {out, rep.consistent ? 0 : 4};
}

struct DescendStage {
    int a = 0, b = 0;
    int count = -1;
};

inline Outcome cmd_descend(const std::string& pair_text, int steps, int max_order, int primes, u64 seed,
                           bool parallel) {
    Timer t;
    auto pr = io::pair_from_json(io::parse_json(pair_text, "pair file"));
    ExactContext ctx(pr.field);
    auto NF = ctx.nf();
    CoverPair<NumberField> cur{lift_cover(ctx, NF, pr.c1), lift_cover(ctx, NF, pr.c2)};

    json chain = json::array();
    ExactPair cur_exact = pr;
    auto record_stage = [&](const CoverPair<NumberField>& pair, const ExactPair& ex) {
        auto inv = invariant_pair(NF, pair);
        json st{{"a", inv.common_two_torsion}, {"b", inv.common_klein}};
        if (max_order > 0) {
            auto r = common_torsion_x(ex, max_order, primes, seed, parallel);
            st["count"] = r.count;
            st["bound"] = max_order;
            st["consistent"] = r.consistent;
        }
        chain.push_back(st);
    };
    record_stage(cur, cur_exact);

    for (int s = 0; s < steps; ++s) {
        auto g1 = klein_group(NF, cur.c1);
        auto g2 = klein_group(NF, cur.c2);
        std::optional<Mobius<NumberField>> alpha;
        for (int i = 1; i < 4 && !alpha; ++i)
            for (int j = 1; j < 4 && !alpha; ++j)
                if (mobius_eq_proj(NF, g1[(size_t)i], g2[(size_t)j])) alpha = g1[(size_t)i];
        if (!alpha) throw std::domain_error("descend: no common nontrivial involution (b = 1)");
        auto res = descend_pair(NF, cur, *alpha);
        if (res.needs_extension)
            throw std::domain_error("descend: fixed points of the involution require a field extension");
        cur = res.pair;
        cur_exact.c1 = pack_cover(NF, cur.c1);
        cur_exact.c2 = pack_cover(NF, cur.c2);
        record_stage(cur, cur_exact);
    }
    json payload{{"type", "descend_report"},
                 {"steps", steps},
                 {"chain", chain},
                 {"pair", io::pair_to_json(cur_exact)}};
    auto out = run_report_shell("descend", seed,
                                json{{"steps", steps}, {"max_order", max_order}, {"primes", primes}}, payload, "ok",
                                t.ms());
    io::validate_run_report(out);
    return {out, 0};
}

inline Outcome cmd_ascend(const std::string& pair_text, int to_zero, int to_inf, int sqrt_choice, u64 seed) {
    Timer t;
    auto pr = io::pair_from_json(io::parse_json(pair_text, "pair file"));
    ExactContext ctx(pr.field);
    auto NF = ctx.nf();
    CoverPair<NumberField> cur{lift_cover(ctx, NF, pr.c1), lift_cover(ctx, NF, pr.c2)};
    // canonical list of common branch values
    std::vector<P1<NumberField>> common;
    for (auto& b1 : cur.c1.branch)
        for (auto& b2 : cur.c2.branch)
            if (p1_eq(NF, b1, b2)) common.push_back(b1);
    if ((int)common.size() < 2) throw std::domain_error("ascend: fewer than two common branch values");
    if (to_zero < 0 || to_inf < 0 || to_zero >= (int)common.size() || to_inf >= (int)common.size() ||
        to_zero == to_inf)
        throw std::domain_error("ascend: invalid choice of common branch values");
    auto res = ascend_pair(NF, cur, common[(size_t)to_zero], common[(size_t)to_inf], sqrt_choice);
    if (res.needs_extension) {
        json payload{{"type", "ascend_report"},
                     {"status", "field-extension-required"},
                     {"adjoin", [&] {
                          json a = json::array();
                          for (auto& c : res.extension_poly) {
                              auto r = NF.as_rational(c);
                              a.push_back(r ? rational_to_string(*r) : std::string("<nonrational>"));
                          }
                          return a;
                      }()}};
        auto out = run_report_shell("ascend", seed, json{{"sqrt_choice", sqrt_choice}}, payload,
                                    "field-extension-required", t.ms());
        return {out, 3};
    }
    ExactPair up = pr;
    up.c1 = pack_cover(NF, res.pair.c1);
    up.c2 = pack_cover(NF, res.pair.c2);
    json payload{{"type", "ascend_report"}, {"status", "ok"}, {"pair", io::pair_to_json(up)}};
    auto out = run_report_shell("ascend", seed, json{{"sqrt_choice", sqrt_choice}}, payload, "ok", t.ms());
    io::validate_run_report(out);
    return {out, 0};
}

inline Outcome cmd_packet(const std::string& curve_text, int max_order, int primes, u64 seed, bool parallel) {
    Timer t;
    auto g = io::curve_from_json(io::parse_json(curve_text, "curve file"));
    if (!g.involution) {
        json payload{{"type", "packet_report"}, {"bound", max_order}, {"size", -1}, {"iprime", -1},
                     {"consistent", false}, {"evidence", json::array()}, {"status", "unsupported: no bielliptic structure given"}};
        auto out = run_report_shell("packet", seed, json{{"max_order", max_order}}, payload, "unsupported", t.ms());
        return {out, 3};
    }
    auto rep = packet_report(g, max_order, primes, seed, parallel);
    auto out = run_report_shell("packet", seed, json{{"max_order", max_order}, {"primes", primes}},
                                io::packet_report_to_json(rep), rep.status, t.ms());
    io::validate_run_report(out);
    return {out, rep.consistent ? 0 : 4};
}

inline Outcome cmd_search(const search::SearchConfig& cfg) {
    Timer t;
    auto rep = search::run_search(cfg);
    auto out = run_report_shell("search", cfg.seed,
                                json{{"family", cfg.family},
                                     {"m_max", cfg.m_max},
                                     {"n_max", cfg.n_max},
                                     {"primes", cfg.prime_count},
                                     {"exact", cfg.exact_mode}},
                                io::search_report_to_json(rep), rep.consistent ? "ok" : "inconsistent", t.ms());
    io::validate_run_report(out);
    return {out, rep.consistent ? 0 : 4};
}

}  // namespace cmd
}  // namespace torsionx

#endif
