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

#include "lath/verify.hpp"

#include <random>
#include <sstream>

#include "lath/formulas.hpp"
#include "lath/hasher.hpp"
#include "lath/intmath.hpp"
#include "lath/scheduler.hpp"
#include "lath/sponge.hpp"
#include "lath/topology.hpp"

namespace lath {

namespace {

template <typename... Args>
std::string cat(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

CheckResult fail(std::string name, std::string detail) {
    return CheckResult{std::move(name), false, std::move(detail)};
}

CheckResult pass(std::string name, std::string detail) {
    return CheckResult{std::move(name), true, std::move(detail)};
}

} // namespace

CheckResult check_unrestricted_sweep(std::int64_t l_max, const std::vector<std::int64_t>& ds) {
    const std::string name = "unrestricted running time and processor count";
    for (const std::int64_t d : ds) {
        const CostParams params{d, 8};
        for (std::int64_t l = 2; l <= l_max; ++l) {
            const UnrestrictedPlan plan = predict_unrestricted(l, d, 2);
            const TreeTopology tree = build_unrestricted(l, d, 2);
            const Schedule schedule = simulate(tree, params);
            if (schedule.makespan != plan.time || schedule.processor_count != plan.processors) {
                return fail(name, cat("l=", l, " d=", d, ": makespan ", schedule.makespan, " procs ",
                                      schedule.processor_count, ", predicted ", plan.time, "/",
                                      plan.processors));
            }
            if (tree.node_count() != ceil_div(l, 2)) {
                return fail(name, cat("l=", l, " d=", d, ": node count ", tree.node_count(),
                                      " != ceil(l/2)"));
            }
            if (d == 1 && plan.time != ceil_log_ratio(2, l, 1) + 1) {
                return fail(name, cat("l=", l, ": d=1 time ", plan.time, " != ceil(log2 l)+1"));
            }
        }
    }
    return pass(name, cat("swept l in [2,", l_max, "] for ", ds.size(),
                          " block/digest ratios; makespan and width exact"));
}

CheckResult check_oracle_optimality(const OracleLimits& limits, std::int64_t enum_max,
                                    const std::vector<std::int64_t>& ds) {
    const std::string name = "optimality oracle";
    const OracleResult base_case = optimal_time_bruteforce(4, 1, limits);
    if (base_case.optimal_time != 3) {
        return fail(name, cat("four blocks at d=1 gave ", base_case.optimal_time, ", expected 3"));
    }
    for (const std::int64_t d : ds) {
        const std::int64_t lo = d == 1 ? 1 : 2;
        std::int64_t prev = 0;
        for (std::int64_t l = lo; l <= limits.cap(d); ++l) {
            const OracleResult result = optimal_time_bruteforce(l, d, limits);
            const std::int64_t expected =
                l == 1 ? 1 : ceil_log_ratio(d + 1, l, 2) + 2;
            if (result.optimal_time != expected) {
                return fail(name, cat("l=", l, " d=", d, ": oracle ", result.optimal_time,
                                      " != closed form ", expected));
            }
            if (result.optimal_time < prev) {
                return fail(name, cat("l=", l, " d=", d, ": optimum decreased"));
            }
            prev = result.optimal_time;
            if (l >= 1) {
                const TreeTopology witness = witness_topology(result);
                const Schedule schedule = simulate(witness, CostParams{d, 8});
                if (schedule.makespan != result.optimal_time) {
                    return fail(name, cat("l=", l, " d=", d, ": witness re-simulates to ",
                                          schedule.makespan, " != ", result.optimal_time));
                }
            }
        }
        if (!full_enumeration_check(std::min<std::int64_t>(enum_max, limits.cap(d)), d)) {
            return fail(name, cat("d=", d, ": unpruned enumeration disagrees with the recursion"));
        }
    }
    return pass(name, cat("exhaustive optimum matches the closed form up to l=", limits.cap_d1,
                          " (d=1) and l=", limits.cap_dgt1,
                          " (d>1); witnesses re-simulate; unpruned enumeration agrees up to l=",
                          enum_max));
}

CheckResult check_height2_base(std::int64_t l_max) {
    const std::string name = "height-2 running time";
    std::int64_t k_search = 1;
    for (std::int64_t l = 2; l <= l_max; ++l) {
        // independent re-derivation: smallest k with k^2 + k - 2(l-1) >= 0,
        // by direct integer search (k never decreases as l grows)
        while (k_search * k_search + k_search - 2 * (l - 1) < 0) {
            ++k_search;
        }
        const Height2Plan plan = height2_k(l);
        if (plan.k != k_search || plan.time != k_search + 1) {
            return fail(name, cat("l=", l, ": plan k=", plan.k, ", search k=", k_search));
        }
        std::int64_t sum = 0;
        for (const std::int64_t c : plan.chunk_sizes) {
            sum += c;
        }
        if (sum != l) {
            return fail(name, cat("l=", l, ": chunks sum to ", sum));
        }
        const TreeTopology tree = build_height2(l);
        const Schedule schedule = simulate(tree, CostParams{1, 8});
        if (schedule.makespan != plan.time || schedule.processor_count != plan.processors) {
            return fail(name, cat("l=", l, ": simulated ", schedule.makespan, "/",
                                  schedule.processor_count, ", planned ", plan.time, "/",
                                  plan.processors));
        }
    }
    const Height2Plan fig = height2_k(22);
    if (fig.time != 7 || fig.processors != 6) {
        return fail(name, cat("22 blocks: time ", fig.time, " procs ", fig.processors,
                              ", expected 7/6"));
    }
    return pass(name, cat("swept l in [2,", l_max, "]; simulated makespan k+1 with smallest valid k"));
}

CheckResult check_height2_optimized(std::int64_t l_max) {
    const std::string name = "optimized height-2 processor count";
    for (std::int64_t l = 2; l <= l_max; ++l) {
        // brute-force (i, k): for each i, the smallest k with
        // k^2 + k - i^2 + 3i - 2l >= 0 found by upward search; keep the
        // minimal k and the largest i attaining it
        std::int64_t best_k = -1;
        std::int64_t best_i = 1;
        for (std::int64_t j = 1; j <= l; ++j) {
            std::int64_t k = 0;
            while (k * k + k - j * j + 3 * j - 2 * l < 0) {
                ++k;
            }
            if (best_k < 0 || k < best_k) {
                best_k = k;
                best_i = j;
            } else if (k == best_k) {
                best_i = j;
            } else if (j >= 2) {
                break; // k(j) is non-decreasing from here on
            }
        }
        const Height2Plan base = height2_k(l);
        const Height2Plan opt = height2_optimized(l);
        if (opt.k != best_k || opt.i != best_i) {
            return fail(name, cat("l=", l, ": plan (i=", opt.i, ",k=", opt.k, "), brute force (i=",
                                  best_i, ",k=", best_k, ")"));
        }
        if (opt.time != base.time || opt.processors > base.processors) {
            return fail(name, cat("l=", l, ": optimized ", opt.time, "/", opt.processors,
                                  " vs base ", base.time, "/", base.processors));
        }
        const Schedule schedule = simulate(build_height2(l, true), CostParams{1, 8});
        if (schedule.makespan != opt.time || schedule.processor_count != opt.processors) {
            return fail(name, cat("l=", l, ": simulated ", schedule.makespan, "/",
                                  schedule.processor_count, ", planned ", opt.time, "/",
                                  opt.processors));
        }
    }
    return pass(name, cat("swept l in [2,", l_max,
                          "]; search-optimal (i,k), same time, never more processors"));
}

CheckResult check_arity_intervals(std::int64_t l_max, const std::vector<std::int64_t>& ds) {
    const std::string name = "leaf-arity selection intervals";
    for (const std::int64_t d : ds) {
        const CostParams params{d, 8};
        for (std::int64_t l = 2; l <= l_max; ++l) {
            const UnrestrictedPlan plan = select_leaf_arity(l, d);
            // in-interval test in exact arithmetic: the largest i with
            // 2(d+1)^i < l, when it exists
            bool in_interval = false;
            std::int64_t pow = 1;
            while (2 * pow * (d + 1) < l) {
                pow *= d + 1;
            }
            if (2 * pow < l) {
                in_interval = l <= 3 * pow;
            }
            if ((plan.leaf_arity == 3) != in_interval) {
                return fail(name, cat("l=", l, " d=", d, ": selected b=", plan.leaf_arity,
                                      in_interval ? " outside" : " inside", " the 3-leaf interval"));
            }
            if (plan.processors != ceil_div(l, plan.leaf_arity)) {
                return fail(name, cat("l=", l, " d=", d, ": processors ", plan.processors));
            }
            if (plan.leaf_arity == 3) {
                const Schedule schedule = simulate(build_unrestricted(l, d, 3), params);
                const std::int64_t optimal = ceil_log_ratio(d + 1, l, 2) + 2;
                if (schedule.makespan != optimal) {
                    return fail(name, cat("l=", l, " d=", d, ": 3-leaf makespan ", schedule.makespan,
                                          " != optimal ", optimal));
                }
            }
        }
    }
    return pass(name, cat("swept l in [2,", l_max,
                          "]; b=3 exactly on the stated intervals, still time-optimal"));
}

CheckResult check_bounded_sweep(std::int64_t l_max, std::int64_t p_max,
                                const std::vector<std::int64_t>& ds) {
    const std::string name = "bounded-processor running time";
    for (const std::int64_t d : ds) {
        const CostParams params{d, 8};
        for (std::int64_t l = 2; l <= l_max; ++l) {
            for (std::int64_t P = 1; P <= p_max; ++P) {
                const BoundedPlan plan = predict_bounded(l, d, P);
                if (plan.a + plan.b_count != plan.p ||
                    plan.a * ceil_div(l, plan.p) + plan.b_count * (l / plan.p) != l) {
                    return fail(name, cat("l=", l, " d=", d, " P=", P, ": bad chunk split a=",
                                          plan.a, " b=", plan.b_count));
                }
                const Schedule schedule = simulate(build_bounded(l, d, P), params);
                const std::int64_t bound = ceil_div(l, plan.p) + ceil_log_ratio(d + 1, plan.p, 1);
                if (d == 1) {
                    if (schedule.makespan != bound || plan.time != bound) {
                        return fail(name, cat("l=", l, " P=", P, ": d=1 makespan ",
                                              schedule.makespan, " != ", bound));
                    }
                } else if (schedule.makespan > bound) {
                    return fail(name, cat("l=", l, " d=", d, " P=", P, ": makespan ",
                                          schedule.makespan, " exceeds bound ", bound));
                }
            }
        }
    }
    std::string d_list;
    for (const std::int64_t d : ds) {
        d_list += (d_list.empty() ? "" : ",") + std::to_string(d);
    }
    return pass(name, cat("swept l in [2,", l_max, "], P in [1,", p_max, "], d in {", d_list,
                          "}; exact at d=1, within bound above, chunk splits exact"));
}

CheckResult check_digest_coherence(int cases, std::uint64_t seed) {
    const std::string name = "digest coherence across execution modes";
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
        const std::int64_t l = 2 + static_cast<std::int64_t>(rng() % 255);
        const std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 4);
        TreeTopology tree;
        switch (c % 5) {
        case 0: tree = build_height2(l); tree.d = d; break;
        case 1: tree = build_height2(l, true); tree.d = d; break;
        case 2: tree = build_unrestricted(l, d, select_leaf_arity(l, d).leaf_arity); break;
        case 3: tree = build_bounded(l, d, 1 + static_cast<std::int64_t>(rng() % std::min<std::int64_t>(l, 16))); break;
        default: tree = build_same_depth_base(l, 2 + static_cast<std::int64_t>(rng() % 2), d); break;
        }
        const SpongeParams params{CostParams{d, 128}, 256, 8};
        const PrefixStateTable table(params);
        std::vector<std::uint8_t> bytes(static_cast<std::size_t>(l * params.cost.block_bytes()));
        for (auto& b : bytes) {
            b = static_cast<std::uint8_t>(rng());
        }
        const BitString message = BitString::from_bytes(bytes);

        const ExecutionReport seq = hash_sequential(message, tree, table);
        WorkerOptions wopt;
        wopt.workers = 4;
        wopt.jitter_max_us = 120;
        wopt.jitter_seed = rng();
        const ExecutionReport pool = hash_workerpool(message, tree, table, wopt);
        const ExecutionReport lockstep = hash_lockstep(message, tree, table);

        if (seq.digest != pool.digest || seq.digest != lockstep.digest) {
            return fail(name, cat("case ", c, " (l=", l, " d=", d, "): digests differ across modes"));
        }
        if (seq.total_calls != pool.total_calls || seq.total_calls != lockstep.total_calls) {
            return fail(name, cat("case ", c, ": total calls differ across modes"));
        }
        const Schedule schedule = simulate(tree, params.cost);
        if (lockstep.lockstep_rounds != schedule.makespan) {
            return fail(name, cat("case ", c, " (l=", l, " d=", d, "): lockstep rounds ",
                                  lockstep.lockstep_rounds, " != makespan ", schedule.makespan));
        }
        const std::vector<std::int64_t> zeros(static_cast<std::size_t>(tree.node_count()), 0);
        for (std::int64_t id = 0; id < tree.node_count(); ++id) {
            const auto items = node_stream(tree.node(id), tree, params.cost, zeros);
            const std::int64_t expected = call_count(items, params.cost);
            if (seq.per_node_calls[static_cast<std::size_t>(id)] != expected ||
                lockstep.per_node_calls[static_cast<std::size_t>(id)] != expected) {
                return fail(name, cat("case ", c, ": node ", id, " call count off (expected ",
                                      expected, ")"));
            }
        }
    }
    return pass(name, cat(cases, " randomized cases: identical digests, rounds equal makespan, "
                                 "calls equal the cost model"));
}

CheckResult check_idealized_rate(std::int64_t s_max, const std::vector<std::int64_t>& ds) {
    const std::string name = "idealized rate and prefix-state table";
    std::mt19937_64 rng(0xC0FFEE);
    for (const std::int64_t d : ds) {
        const SpongeParams params{CostParams{d, 128}, 256, 8};
        const PrefixStateTable table(params);
        // every entry equals a from-zero absorption of its first block, and
        // the sixteen states are pairwise distinct
        for (int tc = 0; tc < 4; ++tc) {
            for (int lead = 0; lead < 4; ++lead) {
                SpongeState replay = zero_state(params);
                const BitString block = table.prefix_block(tc, lead);
                for (std::int64_t k = 0; k < params.rate_bits() / 8; ++k) {
                    replay.words[static_cast<std::size_t>(k / 8)] ^=
                        static_cast<std::uint64_t>(block.bytes()[static_cast<std::size_t>(k)])
                        << ((k % 8) * 8);
                }
                permute(replay, params);
                if (!(replay == table.entry(tc, lead))) {
                    return fail(name, cat("d=", d, ": prefix state (", tc, ",", lead,
                                          ") differs from direct absorption"));
                }
            }
        }
        for (int a = 0; a < 16; ++a) {
            for (int b = a + 1; b < 16; ++b) {
                if (table.entry(a / 4, a % 4) == table.entry(b / 4, b % 4)) {
                    return fail(name, cat("d=", d, ": prefix states ", a, " and ", b, " collide"));
                }
            }
        }
        for (std::int64_t s = 1; s <= s_max; ++s) {
            std::vector<std::uint8_t> bytes(static_cast<std::size_t>(s * params.cost.block_bytes()));
            for (auto& b : bytes) {
                b = static_cast<std::uint8_t>(rng());
            }
            const BitString input = BitString::from_bytes(bytes);
            for (int tc = 0; tc < 4; ++tc) {
                const VilResult r = vil_hash(input, NodeTypeCode::from_value(tc), table);
                if (r.calls != s) {
                    return fail(name, cat("d=", d, " s=", s, " type=", tc, ": ", r.calls,
                                          " calls for ", s, " blocks"));
                }
            }
        }
    }
    return pass(name, cat("s blocks cost s calls for s in [1,", s_max,
                          "] and all type codes; 16 prefix states verified"));
}

CheckResult check_speedup_report() {
    const std::string name = "same-depth speedup comparison";
    const CostParams params{1, 8};
    const std::int64_t l = 729;
    const Schedule same_depth = simulate(build_same_depth_base(l, 3, 1), params);
    const Schedule transformed = simulate(build_unrestricted(l, 1, 2), params);
    if (same_depth.makespan != 18) {
        return fail(name, cat("ternary same-depth baseline at l=729: makespan ",
                              same_depth.makespan, ", expected 18"));
    }
    if (transformed.makespan != 11) {
        return fail(name, cat("leaves-at-all-levels tree at l=729: makespan ",
                              transformed.makespan, ", expected 11"));
    }
    if (same_depth.makespan != 3 * ceil_log_ratio(3, l, 1) ||
        transformed.makespan != ceil_log_ratio(2, l, 1) + 1) {
        return fail(name, "l=729 makespans disagree with their closed forms");
    }
    // ratio >= 1.6 in exact arithmetic
    if (same_depth.makespan * 10 < transformed.makespan * 16) {
        return fail(name, cat("speedup ", same_depth.makespan, "/", transformed.makespan,
                              " below 1.6x"));
    }
    return pass(name,
                cat("l=729: same-depth ternary 18 vs 11 (1.63x). In the large-l limit the "
                    "comparison is 3*ceil(log3 l) against ceil(log2 l)+1, whose ratio tends to "
                    "3/log2(3) = 1.89, i.e. approximately a 2x speedup"));
}

std::vector<CheckResult> run_acceptance() {
    std::vector<CheckResult> results;
    results.push_back(check_unrestricted_sweep());
    results.push_back(check_oracle_optimality());
    {
        // both halves of the height-2 criterion under one verdict
        CheckResult base = check_height2_base();
        const CheckResult opt = check_height2_optimized();
        base.name = "height-2 running time and processor minimization";
        if (base.pass && !opt.pass) {
            base.pass = false;
            base.detail = opt.detail;
        } else if (base.pass) {
            base.detail += "; optimized plan search-exact with no extra processors";
        }
        results.push_back(std::move(base));
    }
    results.push_back(check_arity_intervals());
    results.push_back(check_bounded_sweep());
    results.push_back(check_digest_coherence());
    results.push_back(check_idealized_rate());
    results.push_back(check_speedup_report());
    return results;
}

} // namespace lath
