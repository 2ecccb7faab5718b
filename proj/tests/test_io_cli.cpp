#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>

#include "torsionx/commands.hpp"

using namespace torsionx;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
    const char* dir = std::getenv("TORSIONX_FIXTURES");
    REQUIRE(dir != nullptr);
    return io::read_file(std::string(dir) + "/" + name);
}

json strip_timings(json j) {
    j.erase("timings_ms");
    return j;
}

int run_cli(const std::string& args, std::string* out = nullptr) {
    const char* bin = std::getenv("TORSIONX_BIN");
    REQUIRE(bin != nullptr);
    std::string cmdline = std::string(bin) + " " + args + " > /tmp/torsionx_cli_out.json 2>/tmp/torsionx_cli_err.txt";
    int rc = std::system(cmdline.c_str());
    if (out) *out = io::read_file("/tmp/torsionx_cli_out.json");
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("pair and curve files round-trip") {
    auto pj = io::parse_json(fixture("thm13.pair"), "pair");
    auto pr = io::pair_from_json(pj);
    CHECK(pr.field.degree() == 8);
    auto back = io::pair_to_json(pr);
    CHECK(io::pair_from_json(back).c1.origin == pr.c1.origin);
    auto cj = io::parse_json(fixture("record.curve"), "curve");
    auto cr = io::curve_from_json(cj);
    CHECK(cr.sextic.size() == 7);
    REQUIRE(cr.involution.has_value());
    CHECK(cr.involution->lambda_is_cube);
    auto back2 = io::curve_to_json(cr);
    CHECK(io::curve_from_json(back2).involution->lambda_is_cube);
}

TEST_CASE("malformed files produce diagnostics with position") {
    std::string broken = "{\n  \"schema\": \"torsionx.pair.v1\",\n  \"field\": oops\n}";
    try {
        io::parse_json(broken, "pair file");
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
    }
    // structurally invalid: wrong schema
    try {
        io::pair_from_json(json{{"schema", "nope"}});
        FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
        CHECK(std::string(e.what()).find("schema") != std::string::npos);
    }
}

TEST_CASE("cmd_invariants on bundigd fixtures") {
    auto r1 = cmd::cmd_invariants(fixture("thm13.pair"), 1);
    CHECK(r1.exit_code == 0);
    CHECK(r1.report.at("payload").at("a") == 0);
    CHECK(r1.report.at("payload").at("b") == 4);
    auto r2 = cmd::cmd_invariants(fixture("sec3.pair"), 1);
    CHECK(r2.report.at("payload").at("a") == 3);
    CHECK(r2.report.at("payload").at("b") == 1);
}

TEST_CASE("cmd_intersect thm13 headline numbers") {
    auto r = cmd::cmd_intersect(fixture("thm13.pair"), 48, 2, 11, false, true);
    CHECK(r.exit_code == 0);
    auto& p = r.report.at("payload");
    CHECK(p.at("count") == 34);
    CHECK(p.at("consistent") == true);
    for (auto& e : p.at("profile")) {
        u64 o1 = e[1], o2 = e[2];
        CHECK(48 % o1 == 0);
        CHECK(48 % o2 == 0);
    }
    // N = 2: exactly the common branch values (here none are common, count 0)
    auto r2 = cmd::cmd_intersect(fixture("thm13.pair"), 2, 1, 11, false, true);
    CHECK(r2.report.at("payload").at("count") == 0);
    // sec3 at N = 2: the three common branch values
    auto r3 = cmd::cmd_intersect(fixture("sec3.pair"), 2, 1, 11, false, true);
    CHECK(r3.report.at("payload").at("count") == 3);
}

TEST_CASE("cmd_descend chain and emitted pair") {
    auto r = cmd::cmd_descend(fixture("thm13.pair"), 2, 24, 1, 3, true);
    CHECK(r.exit_code == 0);
    auto& chain = r.report.at("payload").at("chain");
    REQUIRE(chain.size() == 3);
    CHECK(chain[0].at("a") == 0);
    CHECK(chain[0].at("b") == 4);
    CHECK(chain[1].at("a") == 2);
    CHECK(chain[1].at("b") == 2);
    CHECK(chain[2].at("a") == 3);
    CHECK(chain[2].at("b") == 1);
    // the emitted (3,1) pair re-parses and has the right invariant
    auto emitted = r.report.at("payload").at("pair");
    auto again = cmd::cmd_invariants(emitted.dump(), 1);
    CHECK(again.report.at("payload").at("a") == 3);
    CHECK(again.report.at("payload").at("b") == 1);
    // no common involution on a (3,1) pair: descend fails the precondition
    CHECK_THROWS_AS(cmd::cmd_descend(emitted.dump(), 1, 0, 1, 3, true), std::domain_error);
}

TEST_CASE("cmd_ascend on a rational pair with square branch data") {
    // normalized (2,2)-shaped pair: common branch {0, inf}, residual branch
    // values perfect squares, so the ascent stays rational
    json pj{{"schema", "torsionx.pair.v1"},
            {"field", json{{"type", "rational"}}},
            {"covers",
             json::array({json{{"model", json{{"tag", "cubic"}, {"params", json::array({json::array({"0"}),
                                                                                        json::array({"4"}),
                                                                                        json::array({"9"})})}}},
                               {"branch", json::array({json::array({"0"}), json::array({"4"}), json::array({"9"}),
                                                       "inf"})},
                               {"origin", 1}},
                          json{{"model", json{{"tag", "cubic"}, {"params", json::array({json::array({"0"}),
                                                                                        json::array({"16"}),
                                                                                        json::array({"25"})})}}},
                               {"branch", json::array({json::array({"0"}), json::array({"16"}), json::array({"25"}),
                                                       "inf"})},
                               {"origin", 1}}})}};
    auto r = cmd::cmd_ascend(pj.dump(), 0, 1, 0, 7);
    CHECK(r.exit_code == 0);
    auto up = r.report.at("payload").at("pair");
    auto inv = cmd::cmd_invariants(up.dump(), 1);
    CHECK(inv.report.at("payload").at("a") == 0);
    CHECK(inv.report.at("payload").at("b") == 2);
    // ascending in non-square coordinates reports the extension politely
    auto pr2 = io::pair_from_json(io::parse_json(fixture("sec3.pair"), "pair"));
    auto r2 = cmd::cmd_ascend(io::pair_to_json(pr2).dump(), 0, 1, 0, 7);
    if (r2.exit_code == 3) CHECK(r2.report.at("status") == "field-extension-required");
}

TEST_CASE("cmd_packet on the record curve") {
    auto r = cmd::cmd_packet(fixture("record.curve"), 48, 2, 5, true);
    CHECK(r.exit_code == 0);
    auto& p = r.report.at("payload");
    CHECK(p.at("size") == 34);
    CHECK(p.at("iprime") == 10);
    CHECK(p.at("consistent") == true);
    // non-bielliptic input: unsupported status
    json cj = io::parse_json(fixture("record.curve"), "curve");
    cj.erase("involution");
    auto r2 = cmd::cmd_packet(cj.dump(), 48, 1, 5, true);
    CHECK(r2.exit_code == 3);
}

TEST_CASE("determinism: identical runs are byte-identical except timings") {
    auto a = cmd::cmd_intersect(fixture("thm13.pair"), 12, 2, 99, false, true);
    auto b = cmd::cmd_intersect(fixture("thm13.pair"), 12, 2, 99, false, true);
    CHECK(strip_timings(a.report).dump() == strip_timings(b.report).dump());
    // serial reference path agrees with the parallel one
    auto c = cmd::cmd_intersect(fixture("thm13.pair"), 12, 2, 99, false, false);
    CHECK(strip_timings(a.report).dump() == strip_timings(c.report).dump());
}

TEST_CASE("cli binary: exit codes and report emission") {
    const char* fixtures = std::getenv("TORSIONX_FIXTURES");
    REQUIRE(fixtures != nullptr);
    std::string fx(fixtures);
    std::string out;
    // success
    CHECK(run_cli("invariants " + fx + "/sec3.pair", &out) == 0);
    auto j = io::parse_json(out, "report");
    io::validate_run_report(j);
    CHECK(j.at("payload").at("a") == 3);
    // parse error -> 2
    CHECK(run_cli("invariants /dev/null") == 2);
    // precondition error -> 3 (descend without a common involution)
    CHECK(run_cli("descend " + fx + "/sec3.pair") == 3);
    // seed env variable is honored
    setenv("TORSIONX_SEED", "4242", 1);
    CHECK(run_cli("invariants " + fx + "/sec3.pair", &out) == 0);
    CHECK(io::parse_json(out, "report").at("seed") == 4242);
    unsetenv("TORSIONX_SEED");
}

TEST_CASE("search reruns with a fixed seed are byte-identical") {
    search::SearchConfig cfg;
    cfg.m_max = 5;
    cfg.n_max = 5;
    cfg.prime_count = 2;
    cfg.exact_mode = true;
    cfg.seed = 31337;
    auto a = cmd::cmd_search(cfg);
    auto b = cmd::cmd_search(cfg);
    CHECK(strip_timings(a.report).dump() == strip_timings(b.report).dump());
}

TEST_CASE("search report payload validates") {
    search::SearchConfig cfg;
    cfg.m_max = 4;
    cfg.n_max = 4;
    cfg.prime_count = 1;
    cfg.seed = 3;
    auto r = cmd::cmd_search(cfg);
    CHECK(r.exit_code == 0);
    io::validate_run_report(r.report);
    CHECK(r.report.at("payload").at("type") == "search_report");
}
