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

#ifndef DLP_FRONTENDS_HPP
#define DLP_FRONTENDS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlp/ground_program.hpp"
#include "dlp/model.hpp"
#include "dlp/solver.hpp"

namespace dlp {

enum class QueryMode { Brave, Cautious };

/// Values of the query's named variables, in the order of first occurrence
/// (anonymous variables are projected away).
using Substitution = std::vector<Constant>;

struct QueryAnswer {
    QueryMode mode = QueryMode::Brave;
    bool ground = true;
    /// Ground queries: the truth value. Non-ground: substitutions non-empty,
    /// or vacuous cautious truth.
    bool result = false;
    /// Set when the program has no answer set at all.
    bool no_answer_sets = false;
    /// Sorted by the constant order, tuple-wise.
    std::vector<Substitution> substitutions;
    /// Brave true: an answer set satisfying the query. Cautious false: an
    /// answer set violating it.
    std::optional<Interpretation> witness;
    std::size_t answer_sets_examined = 0;
};

struct QueryOptions {
    /// Stop as soon as the answer is decided (ground brave true, ground
    /// cautious false, non-ground cautious with an empty intersection).
    bool stop_early = true;
};

/// Named variables of the query (indices into query.variables).
std::vector<VarIndex> named_variables(const Query& query);

/// All substitutions of the named variables under which every conjunct
/// holds in X. Variables occurring only in negated conjuncts range over
/// `universe`.
std::vector<Substitution> query_substitutions(const GroundProgram& gp, const Query& query,
                                              const Interpretation& x, std::span<const Constant> universe);

QueryAnswer brave(const GroundProgram& gp, const Query& query, std::span<const Constant> universe,
                  const QueryOptions& options = {});
QueryAnswer cautious(const GroundProgram& gp, const Query& query, std::span<const Constant> universe,
                     const QueryOptions& options = {});

/// Grounds `program` and answers `query` (parsed against program.symbols).
QueryAnswer brave(const Program& program, const Query& query, const QueryOptions& options = {});
QueryAnswer cautious(const Program& program, const Query& query, const QueryOptions& options = {});

/// `true`, `false`, `true (no answer sets)`, or one `X=c1, Y=c2` line per
/// substitution. Each line ends with a newline.
std::string format_answer(const QueryAnswer& answer, const Query& query, const SymbolTable& symbols);

} // namespace dlp

#endif
