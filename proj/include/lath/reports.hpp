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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "lath/hasher.hpp"
#include "lath/topology.hpp"
#include "lath/verify.hpp"

namespace lath {

/// Which tree construction to run; the CLI's builder selector.
struct BuilderSpec {
    enum class Kind { Height2, Height2Opt, Unrestricted, SameDepth, Bounded };
    Kind kind = Kind::Unrestricted;
    std::int64_t leaf_arity = 0; ///< Unrestricted: 2, 3, or 0 for auto-select
    std::int64_t arity = 3;      ///< SameDepth level arity
    std::int64_t P = 0;          ///< Bounded processor budget

    static BuilderSpec from_name(const std::string& name);
};

/// Dispatches to the matching builder. A one-block message collapses to a
/// single node for every builder.
TreeTopology build_topology(const BuilderSpec& spec, std::int64_t l, std::int64_t d);

std::string builder_label(const BuilderSpec& spec, std::int64_t l, std::int64_t d);

/// Predicted running time for the builder's plan, when a closed form exists.
std::optional<std::int64_t> predicted_time(const BuilderSpec& spec, std::int64_t l, std::int64_t d);

/// Machine-readable prediction summary: height-2 plans, unrestricted plan
/// with the auto-selected arity, the ternary-derivation bound, and the
/// bounded-P plan when requested. Stable field order.
nlohmann::ordered_json predict_report(std::int64_t l, std::int64_t d,
                                      std::optional<std::int64_t> P);

/// Hash run summary: digest, topology shape, predicted time versus simulated
/// makespan (and lockstep rounds when applicable).
nlohmann::ordered_json hash_report(const BitString& message, const std::string& file_label,
                                   std::int64_t d, std::int64_t digest_bits,
                                   const BuilderSpec& spec, ExecMode mode, int workers);

nlohmann::ordered_json verify_report(const std::vector<CheckResult>& checks);

} // namespace lath
