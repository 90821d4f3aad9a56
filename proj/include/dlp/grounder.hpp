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

#ifndef DLP_GROUNDER_HPP
#define DLP_GROUNDER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dlp/ground_program.hpp"
#include "dlp/model.hpp"

namespace dlp {

/// Throws SafetyError naming the first unsafe variable of `rule`.
///
/// A variable is safe if it occurs in a positive non-built-in body literal,
/// in #int(X), as the result Z of an arithmetic built-in whose operands are
/// safe, or as the second argument of #succ whose first argument is safe.
void check_safety(const Rule& rule);

/// Predicate dependency graph. Edges run from body predicate to head
/// predicate; components are listed in topological order (every edge goes
/// from an earlier or the same component to a later or the same one).
struct DependencyGraph {
    struct Edge {
        PredicateId from;
        PredicateId to;
        bool negative;
        friend bool operator==(const Edge&, const Edge&) = default;
        friend auto operator<=>(const Edge&, const Edge&) = default;
    };

    std::size_t predicate_count = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<PredicateId>> components;
    std::vector<std::size_t> component_of;

    bool has_edge(PredicateId from, PredicateId to, bool negative) const;
    /// True if the component has more than one predicate or a self edge.
    bool is_recursive(std::size_t component) const;
};

DependencyGraph build_dependency_graph(const Program& program);

struct GroundingOptions {
    /// Budget on the total number of literal occurrences in emitted ground
    /// rules; exceeding it throws ResourceError. 0 disables the check.
    std::size_t max_rule_literals = 500'000'000;
};

struct GroundingStats {
    /// Instances dropped because an arithmetic result left [0, max_int].
    std::size_t arithmetic_overflows = 0;
    std::size_t instantiated_rules = 0;
    std::size_t emitted_rules = 0;
    std::size_t facts = 0;
};

struct GroundRule {
    std::vector<LiteralId> head;
    std::vector<LiteralId> pos_body;
    std::vector<LiteralId> neg_body;
    friend bool operator==(const GroundRule&, const GroundRule&) = default;
};

/// All instances of `rule` whose positive body matches literals among
/// `candidates` and whose built-ins hold. Literal ids refer to `target`,
/// which must share the rule's symbol table; new literals are interned.
std::vector<GroundRule> ground_rule(const Rule& rule, GroundProgram& target, std::span<const LiteralId> candidates,
                                    GroundingStats* stats = nullptr);

/// Instantiates the program bottom-up over the dependency graph's
/// components and simplifies the result. The output has the same answer
/// sets as the full instantiation over the Herbrand universe.
GroundProgram ground_program(const Program& program, const GroundingOptions& options = {},
                             GroundingStats* stats = nullptr);

} // namespace dlp

#endif
