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

#ifndef DLP_CHECKER_HPP
#define DLP_CHECKER_HPP

#include <optional>
#include <span>
#include <vector>

#include "dlp/ground_program.hpp"

namespace dlp {

struct PositiveRuleView {
    std::span<const LiteralId> head;
    std::span<const LiteralId> body;
};

/// Ground rules without default negation.
class PositiveGroundProgram {
public:
    void add_rule(std::span<const LiteralId> head, std::span<const LiteralId> body);
    std::size_t rule_count() const { return rules_.size(); }
    PositiveRuleView rule(std::size_t i) const;

private:
    struct Record {
        std::size_t begin;
        std::uint32_t head_size;
        std::uint32_t body_size;
    };
    std::vector<Record> rules_;
    std::vector<LiteralId> pool_;
};

/// Gelfond-Lifschitz reduct: drops rules whose negative body meets X and
/// strips the negative body from the others.
PositiveGroundProgram reduct(const GroundProgram& gp, const Interpretation& x);

/// For every rule, body contained in I implies head meets I.
bool is_closed(const Interpretation& i, const PositiveGroundProgram& pp);

/// Requires I consistent and closed under pp. True iff no proper subset of
/// I is closed under pp.
bool is_minimal_model(const Interpretation& i, const PositiveGroundProgram& pp);

/// A closed proper subset of I, if one exists (same precondition).
std::optional<Interpretation> find_smaller_model(const Interpretation& i, const PositiveGroundProgram& pp);

enum class CheckFailure { None, Inconsistent, NotClosed, NotMinimal };

struct CheckResult {
    CheckFailure failure = CheckFailure::None;
    /// Index of a ground rule of the input violated by X (NotClosed).
    std::optional<std::size_t> violated_rule;
    /// A strictly smaller closed interpretation (NotMinimal).
    std::optional<Interpretation> smaller_model;

    bool ok() const { return failure == CheckFailure::None; }
};

/// Answer-set check with scratch space reused across calls; the program
/// must outlive the checker.
class AnswerSetChecker {
public:
    explicit AnswerSetChecker(const GroundProgram& gp) : gp_(gp) {}
    CheckResult check(const Interpretation& x);

private:
    const GroundProgram& gp_;
    std::vector<char> member_;
};

CheckResult check_answer_set(const GroundProgram& gp, const Interpretation& x);

/// X is consistent, closed under reduct(gp, X) and minimal among its closed subsets.
bool is_answer_set(const GroundProgram& gp, const Interpretation& x);

} // namespace dlp

#endif
