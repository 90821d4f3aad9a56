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

#ifndef DLP_SOLVER_HPP
#define DLP_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dlp/checker.hpp"
#include "dlp/ground_program.hpp"

namespace dlp {

enum class TruthValue : std::uint8_t { False = 0, True = 1, Undefined = 2 };

struct SolverStats {
    std::size_t choices = 0;
    std::size_t backtracks = 0;
    std::size_t candidates = 0;
    std::size_t rejected = 0;
    std::size_t answer_sets = 0;
};

struct EnumerationLimit {
    std::size_t max_answer_sets = 0; // 0 = all
};

/// Partial assignment over the literals of a ground program with counters
/// per rule. Counters reflect exactly the trail prefix [0, processed()).
class SolverState {
public:
    struct TrailEntry {
        LiteralId literal;
        TruthValue value;
    };

    explicit SolverState(const GroundProgram& gp);

    TruthValue value(LiteralId l) const { return static_cast<TruthValue>(value_[l]); }
    const std::vector<TrailEntry>& trail() const { return trail_; }
    std::size_t processed() const { return qhead_; }
    std::size_t literal_count() const { return value_.size(); }

    /// Sets l to v; false if l already holds the opposite value.
    bool assign(LiteralId l, TruthValue v);

    /// Closes the assignment under forward, backward, complement and support
    /// inference. Returns false on conflict; the assignment is then partial
    /// but the state stays consistent for undo_to().
    bool propagate();

    /// Undefined literal of an unsatisfied rule with the most occurrences in
    /// unsatisfied bodies, lowest id on ties; nullopt if there is none.
    /// Requires a propagated state.
    std::optional<LiteralId> choose_branch() const;

    /// Retracts trail entries at positions >= pos.
    void undo_to(std::size_t pos);

    /// True literals, sorted.
    Interpretation true_literals() const;

    /// Rule is satisfied under the processed assignment: a head literal is
    /// true or a body element is false.
    bool rule_satisfied(std::size_t r) const { return head_true_[r] > 0 || body_false_[r] > 0; }

private:
    bool supports(std::size_t r, LiteralId h) const;
    void apply(const TrailEntry& e, int delta);
    void change_rule(std::size_t r, int d_body_true, int d_body_false, int d_head_true, int d_head_false,
                     LiteralId head_lit);
    bool check_rule(std::size_t r);
    bool check_literal(LiteralId l);
    bool force_support(std::size_t r, LiteralId l);

    const GroundProgram& gp_;
    std::vector<std::uint8_t> value_;
    std::vector<TrailEntry> trail_;
    std::size_t qhead_ = 0;
    bool initialized_ = false;

    // occurrence lists, CSR layout indexed by literal
    std::vector<std::uint32_t> head_begin_, head_occ_;
    std::vector<std::uint32_t> pos_begin_, pos_occ_;
    std::vector<std::uint32_t> neg_begin_, neg_occ_;

    std::vector<std::uint32_t> body_true_, body_false_, head_true_, head_false_, head_xor_;
    std::vector<std::uint32_t> support_;

    std::vector<std::uint32_t> touched_rules_;
    std::vector<LiteralId> touched_lits_;
    mutable std::vector<std::uint32_t> score_;
};

/// Pull-based enumeration of the answer sets of a ground program. Each
/// candidate (total propagated assignment) is verified by the checker.
class ModelGenerator {
public:
    explicit ModelGenerator(const GroundProgram& gp);

    /// Next answer set in search order, or nullopt when exhausted.
    std::optional<Interpretation> next();
    const SolverStats& stats() const { return stats_; }

private:
    struct Decision {
        std::size_t trail_pos;
        LiteralId literal;
        bool flipped;
    };

    bool backtrack();

    SolverState state_;
    AnswerSetChecker checker_;
    std::vector<Decision> decisions_;
    SolverStats stats_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<Interpretation> enumerate_answer_sets(const GroundProgram& gp, EnumerationLimit limit = {},
                                                  SolverStats* stats = nullptr);

} // namespace dlp

#endif
