// Copyright 2026 the lath authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lath/formulas.hpp"
#include "lath/intmath.hpp"
#include "lath/oracle.hpp"
#include "lath/reports.hpp"
#include "lath/scheduler.hpp"
#include "lath/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

std::string join_chunks(const std::vector<std::int64_t>& chunks) {
    std::string s;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        s += (i == 0 ? "" : "+") + std::to_string(chunks[i]);
    }
    return s;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            throw std::runtime_error{"cannot write " + out_path};
        }
        out << text;
    }
}

lath::OracleLimits oracle_limits_from_env() {
    lath::OracleLimits limits;
    if (const char* v = std::getenv("LATH_ORACLE_CAP_D1")) {
        limits.cap_d1 = std::stoll(v);
    }
    if (const char* v = std::getenv("LATH_ORACLE_CAP_D2")) {
        limits.cap_dgt1 = std::stoll(v);
    }
    return limits;
}

int cmd_predict(std::int64_t l, std::int64_t d, std::optional<std::int64_t> P, bool json) {
    const auto report = lath::predict_report(l, d, P);
    if (json) {
        std::cout << report.dump(2) << "\n";
        return kExitOk;
    }
    const auto& h2 = report["height2"];
    const auto& opt = report["height2_optimized"];
    std::cout << "message length:     " << l << " blocks, d=" << d << "\n";
    std::cout << "height-2:           time " << h2["time"] << ", processors " << h2["processors"]
              << " (k=" << h2["k"] << ", chunks "
              << join_chunks(h2["chunks"].get<std::vector<std::int64_t>>()) << ")\n";
    std::cout << "height-2 optimized: time " << opt["time"] << ", processors "
              << opt["processors"] << " (i=" << opt["i"] << ", k=" << opt["k"] << ")\n";
    std::cout << "unrestricted (b=2): time " << report["unrestricted_b2"]["time"]
              << ", processors " << report["unrestricted_b2"]["processors"] << "\n";
    std::cout << "selected arity:     b=" << report["selected_arity"]["b"] << ", time "
              << report["selected_arity"]["time"] << ", processors "
              << report["selected_arity"]["processors"] << "\n";
    std::cout << "ternary derivation: time <= " << report["ternary_derivation_time"] << "\n";
    if (report.contains("bounded")) {
        const auto& b = report["bounded"];
        std::cout << "bounded (P=" << b["P"] << "):     time " << b["time"] << " with "
                  << b["a"] << " chunks of " << lath::ceil_div(l, b["effective_p"].get<std::int64_t>())
                  << " and " << b["b_count"] << " of " << l / b["effective_p"].get<std::int64_t>();
        if (b["clamped"].get<bool>()) {
            std::cout << " (P clamped to " << b["effective_p"] << ")";
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_build(std::int64_t l, std::int64_t d, const lath::BuilderSpec& spec,
              const std::string& format, const std::string& out_path) {
    const lath::TreeTopology tree = lath::build_topology(spec, l, d);
    const auto fmt = format == "dot" ? lath::ExportFormat::Dot : lath::ExportFormat::Json;
    emit(lath::export_topology(tree, fmt), out_path);
    return kExitOk;
}

int cmd_simulate(std::int64_t l, std::int64_t d, const lath::BuilderSpec& spec, bool json,
                 const std::string& out_path) {
    const lath::TreeTopology tree = lath::build_topology(spec, l, d);
    const lath::CostParams params{d, 128};
    const lath::Schedule schedule = lath::simulate(tree, params);
    if (json) {
        emit(lath::schedule_to_json(schedule), out_path);
        return kExitOk;
    }
    std::string text;
    text += "builder:       " + lath::builder_label(spec, l, d) + "\n";
    text += "makespan:      " + std::to_string(schedule.makespan) + " units\n";
    text += "processors:    " + std::to_string(schedule.processor_count) + "\n";
    text += "total calls:   " + std::to_string(schedule.total_calls()) + "\n";
    const auto path = lath::critical_path(schedule, tree, params);
    text += "critical path:";
    for (const auto id : path) {
        text += " n" + std::to_string(id);
    }
    text += "\n\n" + lath::schedule_gantt(schedule);
    emit(text, out_path);
    return kExitOk;
}

int cmd_hash(const std::string& file, std::int64_t d, std::int64_t digest_bits,
             const lath::BuilderSpec& spec, const std::string& mode_name, int workers, bool json) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw std::runtime_error{"cannot read " + file};
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.empty()) {
        throw std::runtime_error{"empty file"};
    }
    const lath::ExecMode mode = mode_name == "seq" ? lath::ExecMode::Sequential
        : mode_name == "pool"                      ? lath::ExecMode::WorkerPool
                                                   : lath::ExecMode::Lockstep;
    const auto report = lath::hash_report(lath::BitString::from_bytes(bytes), file, d, digest_bits,
                                          spec, mode, workers);
    if (json) {
        std::cout << report.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "file:      " << file << " (" << report["bytes"] << " bytes)\n";
    std::cout << "l:         " << report["l"] << " blocks, d=" << d << ", digest " << digest_bits
              << " bits\n";
    std::cout << "builder:   " << report["builder"].get<std::string>() << ", "
              << report["nodes"] << " nodes\n";
    if (!report["predicted_time"].is_null()) {
        std::cout << "predicted: " << report["predicted_time"] << " units\n";
    }
    std::cout << "makespan:  " << report["makespan"] << " units (simulated)\n";
    if (report.contains("lockstep_rounds")) {
        std::cout << "lockstep:  " << report["lockstep_rounds"] << " rounds\n";
    }
    std::cout << "calls:     " << report["total_calls"] << "\n";
    std::cout << "digest:    " << report["digest"].get<std::string>() << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& theorem, std::int64_t l_max, std::int64_t p_max, int cases,
               std::uint64_t seed, std::optional<std::int64_t> d, bool json) {
    using namespace lath;
    std::vector<std::int64_t> ds_all{1, 2, 3, 4};
    std::vector<std::int64_t> ds_123{1, 2, 3};
    if (d) {
        ds_all = {*d};
        ds_123 = {*d};
    }
    std::vector<CheckResult> checks;
    if (theorem == "h2") {
        checks.push_back(check_height2_base(l_max > 0 ? l_max : 4096));
    } else if (theorem == "t1") {
        checks.push_back(check_height2_optimized(l_max > 0 ? l_max : 4096));
    } else if (theorem == "t2") {
        checks.push_back(check_unrestricted_sweep(l_max > 0 ? l_max : 2048, {1}));
    } else if (theorem == "t5") {
        checks.push_back(check_unrestricted_sweep(l_max > 0 ? l_max : 2048, ds_all));
    } else if (theorem == "t3") {
        checks.push_back(check_arity_intervals(l_max > 0 ? l_max : 10000, {1}));
    } else if (theorem == "t6") {
        checks.push_back(check_arity_intervals(l_max > 0 ? l_max : 10000, ds_123));
    } else if (theorem == "t4") {
        checks.push_back(check_bounded_sweep(l_max > 0 ? l_max : 1024, p_max, {1}));
    } else if (theorem == "t7") {
        checks.push_back(check_bounded_sweep(l_max > 0 ? l_max : 1024, p_max, {2, 3}));
    } else if (theorem == "oracle") {
        OracleLimits limits = oracle_limits_from_env();
        if (l_max > 0) {
            limits.cap_d1 = std::min(limits.cap_d1, l_max);
            limits.cap_dgt1 = std::min(limits.cap_dgt1, l_max);
        }
        checks.push_back(check_oracle_optimality(limits));
    } else if (theorem == "speedup") {
        checks.push_back(check_speedup_report());
    } else if (theorem == "digest") {
        checks.push_back(check_digest_coherence(cases, seed));
    } else if (theorem == "rate") {
        checks.push_back(check_idealized_rate(l_max > 0 ? l_max : 64, ds_all));
    } else if (theorem == "all") {
        checks = run_acceptance();
    } else {
        std::cerr << "unknown theorem id: " << theorem << "\n";
        return kExitUsage;
    }

    bool all_pass = true;
    for (const CheckResult& check : checks) {
        all_pass = all_pass && check.pass;
    }
    if (json) {
        std::cout << verify_report(checks).dump(2) << "\n";
    } else {
        for (const CheckResult& check : checks) {
            std::cout << (check.pass ? "PASS " : "FAIL ") << check.name << " — " << check.detail
                      << "\n";
        }
    }
    return all_pass ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tree hash modes with leaves at all levels: prediction, construction, "
                 "simulation, hashing and verification"};
    app.require_subcommand(1);

    // predict
    auto* predict = app.add_subcommand("predict", "closed-form time/processor predictions");
    std::int64_t p_l = 0, p_d = 1;
    std::int64_t p_P = 0;
    bool p_json = false;
    predict->add_option("--l", p_l, "message length in blocks")->required();
    predict->add_option("--d", p_d, "block/digest size ratio");
    predict->add_option("--P", p_P, "processor budget for the bounded plan");
    predict->add_flag("--json", p_json, "machine-readable output");

    // shared builder options helper
    const auto add_builder_options = [](CLI::App* cmd, std::string& builder, std::int64_t& b,
                                        std::int64_t& arity, std::int64_t& P) {
        cmd->add_option("--builder", builder,
                        "height2 | height2-opt | unrestricted | same-depth | bounded")
            ->default_val("unrestricted");
        cmd->add_option("--b", b, "leaf arity for unrestricted (2 or 3; default auto)");
        cmd->add_option("--arity", arity, "level arity for same-depth")->default_val(3);
        cmd->add_option("--P", P, "processor budget for bounded");
    };

    // build
    auto* build = app.add_subcommand("build", "construct a topology and export it");
    std::int64_t b_l = 0, b_d = 1, b_b = 0, b_arity = 3, b_P = 0;
    std::string b_builder, b_format = "json", b_out;
    build->add_option("--l", b_l, "message length in blocks")->required();
    build->add_option("--d", b_d, "block/digest size ratio");
    add_builder_options(build, b_builder, b_b, b_arity, b_P);
    build->add_option("--format", b_format, "json | dot")->check(CLI::IsMember({"json", "dot"}));
    build->add_option("-o,--out", b_out, "output path (default stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "lockstep-simulate a topology");
    std::int64_t s_l = 0, s_d = 1, s_b = 0, s_arity = 3, s_P = 0;
    std::string s_builder, s_out;
    bool s_json = false;
    sim->add_option("--l", s_l, "message length in blocks")->required();
    sim->add_option("--d", s_d, "block/digest size ratio");
    add_builder_options(sim, s_builder, s_b, s_arity, s_P);
    sim->add_flag("--json", s_json, "full schedule as JSON");
    sim->add_option("-o,--out", s_out, "output path (default stdout)");

    // hash
    auto* hash = app.add_subcommand("hash", "hash a file over a tree topology");
    std::string h_file, h_builder, h_mode = "pool";
    std::int64_t h_d = 1, h_bits = 128, h_b = 0, h_arity = 3, h_P = 0;
    int h_workers = 4;
    bool h_json = false;
    hash->add_option("--file", h_file, "input file")->required();
    hash->add_option("--d", h_d, "block/digest size ratio");
    hash->add_option("--digest-bits", h_bits, "digest size in bits (multiple of 8)");
    add_builder_options(hash, h_builder, h_b, h_arity, h_P);
    hash->add_option("--mode", h_mode, "seq | pool | lockstep")
        ->check(CLI::IsMember({"seq", "pool", "lockstep"}));
    hash->add_option("--workers", h_workers, "worker threads for pool mode");
    hash->add_flag("--json", h_json, "machine-readable output");

    // verify
    auto* verify = app.add_subcommand("verify", "run verification sweeps");
    std::string v_theorem;
    std::int64_t v_lmax = 0, v_pmax = 64, v_d = 0;
    int v_cases = 200;
    std::uint64_t v_seed = 0x1a70001;
    bool v_json = false;
    verify
        ->add_option("--theorem", v_theorem,
                     "h2 | t1 | t2 | t3 | t4 | t5 | t6 | t7 | oracle | speedup | digest | rate | all")
        ->required();
    verify->add_option("--l-max", v_lmax, "sweep bound on l (0 = default)");
    verify->add_option("--p-max", v_pmax, "sweep bound on P");
    verify->add_option("--d", v_d, "restrict the sweep to one ratio");
    verify->add_option("--cases", v_cases, "randomized case count for digest checks");
    verify->add_option("--seed", v_seed, "seed for randomized checks");
    verify->add_flag("--json", v_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (predict->parsed()) {
            return cmd_predict(p_l, p_d,
                               p_P > 0 ? std::optional<std::int64_t>(p_P) : std::nullopt, p_json);
        }
        const auto spec = [](const std::string& builder, std::int64_t b, std::int64_t arity,
                             std::int64_t P) {
            lath::BuilderSpec s = lath::BuilderSpec::from_name(builder);
            s.leaf_arity = b;
            s.arity = arity;
            s.P = P;
            return s;
        };
        if (build->parsed()) {
            return cmd_build(b_l, b_d, spec(b_builder, b_b, b_arity, b_P), b_format, b_out);
        }
        if (sim->parsed()) {
            return cmd_simulate(s_l, s_d, spec(s_builder, s_b, s_arity, s_P), s_json, s_out);
        }
        if (hash->parsed()) {
            return cmd_hash(h_file, h_d, h_bits, spec(h_builder, h_b, h_arity, h_P), h_mode,
                            h_workers, h_json);
        }
        if (verify->parsed()) {
            return cmd_verify(v_theorem, v_lmax, v_pmax, v_cases, v_seed,
                              v_d > 0 ? std::optional<std::int64_t>(v_d) : std::nullopt, v_json);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
