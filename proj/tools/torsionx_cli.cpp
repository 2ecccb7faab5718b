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

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "torsionx/commands.hpp"

using namespace torsionx;

namespace {

u64 default_seed() {
    if (const char* env = std::getenv("TORSIONX_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1;
}

void emit(const nlohmann::json& report, const std::string& out_path) {
    auto text = report.dump(2);
    if (out_path.empty()) {
        std::cout << text << std::endl;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text << "\n";
    }
}

void emit_pair(const nlohmann::json& report, const std::string& key, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    out << report.at("payload").at(key).dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torsionx: common torsion x-coordinates of elliptic double covers and genus-2 torsion packets"};
    app.require_subcommand(1);
    app.fallthrough();

    u64 seed = default_seed();
    std::string out_path;
    bool serial = false;
    app.add_option("--seed", seed, "deterministic seed (env TORSIONX_SEED)");
    app.add_option("--out", out_path, "write the run report to a file instead of stdout");
    app.add_flag("--serial", serial, "disable the OpenMP parallel paths (serial reference)");

    std::string pair_file, curve_file, emit_path;
    int max_order = 48, primes = 3, steps = 1, to_zero = 0, to_inf = 1, sqrt_choice = 0;
    bool stability = false;

    auto* inv = app.add_subcommand("invariants", "P(pi1, pi2), Klein groups, common branch values");
    inv->add_option("pair", pair_file, "pair description file")->required();

    auto* its = app.add_subcommand("intersect", "bounded common torsion x-coordinates at several primes");
    its->add_option("pair", pair_file)->required();
    its->add_option("--max-order", max_order, "order bound N");
    its->add_option("--primes", primes, "number of verification primes");
    its->add_flag("--stability", stability, "also run at 2N and report growth");

    auto* des = app.add_subcommand("descend", "quotient the pair along a common involution");
    des->add_option("pair", pair_file)->required();
    des->add_option("--steps", steps, "number of descent steps");
    des->add_option("--max-order", max_order, "report bounded intersection sizes along the chain");
    des->add_option("--primes", primes);
    des->add_option("--emit", emit_path, "write the descended pair file");

    auto* asc = app.add_subcommand("ascend", "reverse of descend (square roots of branch values)");
    asc->add_option("pair", pair_file)->required();
    asc->add_option("--to-zero", to_zero, "index of the common branch value sent to 0");
    asc->add_option("--to-inf", to_inf, "index of the common branch value sent to infinity");
    asc->add_option("--sqrt-choice", sqrt_choice, "sign choices for the branch square roots");
    asc->add_option("--emit", emit_path, "write the ascended pair file");

    auto* pkt = app.add_subcommand("packet", "hyperelliptic torsion packet of a bielliptic genus-2 curve");
    pkt->add_option("curve", curve_file)->required();
    pkt->add_option("--max-order", max_order);
    pkt->add_option("--primes", primes);

    search::SearchConfig scfg;
    auto* sea = app.add_subcommand("search", "resultant search for common factors across (m, n)");
    sea->add_option("--family", scfg.family);
    sea->add_option("--m-max", scfg.m_max);
    sea->add_option("--n-max", scfg.n_max);
    sea->add_option("--primes", scfg.prime_count);
    sea->add_flag("--exact", scfg.exact_mode, "CRT-lift detected factors to exact coefficients");
    std::string level_mode = "exact";
    sea->add_option("--level-mode", level_mode, "exact | dividing");
    sea->add_option("--max-grid", scfg.max_grid_log2, "log2 cap on the interpolation grid");
    sea->add_option("--prime-bits", scfg.prime_bits_lo, "lower bit bound for scan primes (upper stays 62)");

    CLI11_PARSE(app, argc, argv);

    try {
        cmd::Outcome res;
        if (*inv) {
            res = cmd::cmd_invariants(io::read_file(pair_file), seed);
        } else if (*its) {
            res = cmd::cmd_intersect(io::read_file(pair_file), max_order, primes, seed, stability, !serial);
        } else if (*des) {
            res = cmd::cmd_descend(io::read_file(pair_file), steps, max_order, primes, seed, !serial);
            emit_pair(res.report, "pair", emit_path);
        } else if (*asc) {
            res = cmd::cmd_ascend(io::read_file(pair_file), to_zero, to_inf, sqrt_choice, seed);
            if (res.exit_code == 0) emit_pair(res.report, "pair", emit_path);
        } else if (*pkt) {
            res = cmd::cmd_packet(io::read_file(curve_file), max_order, primes, seed, !serial);
        } else if (*sea) {
            scfg.seed = seed;
            scfg.parallel = !serial;
            scfg.level_mode =
                level_mode == "dividing" ? search::LevelMode::order_dividing : search::LevelMode::exact_order;
            res = cmd::cmd_search(scfg);
        }
        emit(res.report, out_path);
        return res.exit_code;
    } catch (const io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
