/*
 *  Copyright (C) 2026  The dlp authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */

#ifndef DLP_CLI_HPP
#define DLP_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dlp/ground_program.hpp"

namespace dlp {

enum class RunMode { Solve, Brave, Cautious, GroundOnly, Check };

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 1, // also IO and usage errors
    kExitSafety = 2,
    kExitResource = 3,
};

struct RunConfig {
    std::vector<std::string> inputs;
    RunMode mode = RunMode::Solve;
    std::size_t max_answer_sets = 0; // -n=, 0 = all
    std::int64_t max_int = 0;        // -N=
    std::set<std::string> filter;    // -filter=, empty = everything
    bool stats = false;
    bool unique = false;
    bool witness = false;
};

/// Parses the command-line flags (argv[0] excluded). Throws std::invalid_argument
/// with a usage message on bad input.
RunConfig parse_arguments(std::span<const std::string> args);

/// `{l1, l2, ...}` restricted to the filter predicates, ordered by
/// predicate name, argument tuple, then positive before negated.
std::string format_answer_set(const GroundProgram& gp, const Interpretation& x,
                              const std::set<std::string>& filter = {});

/// The whole pipeline. Results go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

std::string usage();

} // namespace dlp

#endif
