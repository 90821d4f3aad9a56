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

#ifndef DLP_GROUND_PROGRAM_HPP
#define DLP_GROUND_PROGRAM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dlp/model.hpp"

namespace dlp {

/// Dense id of a ground classical literal. Both signs of an atom are
/// adjacent: literal 2a is atom a, literal 2a+1 is -a.
using LiteralId = std::uint32_t;
using AtomId = std::uint32_t;

constexpr LiteralId complement(LiteralId l) { return l ^ 1u; }
constexpr AtomId atom_of(LiteralId l) { return l >> 1; }
constexpr bool is_strongly_negated(LiteralId l) { return (l & 1u) != 0; }
constexpr LiteralId make_literal(AtomId a, bool negated) { return (a << 1) | (negated ? 1u : 0u); }

struct GroundRuleView {
    std::span<const LiteralId> head;
    std::span<const LiteralId> pos_body;
    std::span<const LiteralId> neg_body;

    bool is_constraint() const { return head.empty(); }
    bool is_fact() const { return head.size() == 1 && pos_body.empty() && neg_body.empty(); }
};

/// Ground rules over an interned literal table. Rule parts are stored
/// sorted by literal id and without duplicates.
class GroundProgram {
public:
    GroundProgram() = default;
    explicit GroundProgram(SymbolTable symbols, std::int64_t max_int = 0)
        : symbols_(std::move(symbols)), max_int_(max_int) {}

    const SymbolTable& symbols() const { return symbols_; }
    SymbolTable& symbols() { return symbols_; }
    std::int64_t max_int() const { return max_int_; }

    AtomId intern_atom(PredicateId predicate, std::span<const Constant> args);
    std::optional<AtomId> find_atom(PredicateId predicate, std::span<const Constant> args) const;
    LiteralId intern_literal(PredicateId predicate, std::span<const Constant> args, bool negated) {
        return make_literal(intern_atom(predicate, args), negated);
    }
    /// Interns a ground model literal.
    LiteralId intern_literal(const Literal& literal);
    std::optional<LiteralId> find_literal(const Literal& literal) const;
    /// Convenience for propositional atoms: interns predicate `name`/0.
    LiteralId literal(std::string_view name, bool negated = false);

    std::size_t atom_count() const { return atoms_.size(); }
    std::size_t literal_count() const { return 2 * atoms_.size(); }
    PredicateId predicate(AtomId a) const { return atoms_[a].predicate; }
    std::span<const Constant> args(AtomId a) const {
        return {arg_pool_.data() + atoms_[a].args_begin, atoms_[a].arity};
    }
    Literal to_literal(LiteralId l) const;

    /// Adds a rule; parts are sorted and deduplicated. Returns the rule index.
    std::size_t add_rule(std::span<const LiteralId> head, std::span<const LiteralId> pos_body,
                         std::span<const LiteralId> neg_body);
    std::size_t rule_count() const { return rules_.size(); }
    GroundRuleView rule(std::size_t i) const;

    std::string literal_text(LiteralId l) const;
    std::string rule_text(std::size_t i) const;
    /// All rules in input syntax, one per line, in rule order.
    std::string to_text() const;

private:
    struct AtomRecord {
        PredicateId predicate;
        std::uint32_t args_begin;
        std::uint32_t arity;
    };
    struct RuleRecord {
        std::uint32_t begin;
        std::uint32_t head_size;
        std::uint32_t pos_size;
        std::uint32_t neg_size;
    };

    static std::size_t hash_of(PredicateId p, std::span<const Constant> args);

    SymbolTable symbols_;
    std::int64_t max_int_ = 0;
    std::vector<AtomRecord> atoms_;
    std::vector<Constant> arg_pool_;
    std::vector<LiteralId> lit_pool_;
    std::vector<RuleRecord> rules_;
    std::unordered_multimap<std::size_t, AtomId> index_;
};

/// A set of ground literals of one GroundProgram, kept sorted by id.
class Interpretation {
public:
    Interpretation() = default;
    explicit Interpretation(std::vector<LiteralId> literals);

    bool contains(LiteralId l) const;
    void insert(LiteralId l);
    bool empty() const { return literals_.empty(); }
    std::size_t size() const { return literals_.size(); }
    auto begin() const { return literals_.begin(); }
    auto end() const { return literals_.end(); }
    std::span<const LiteralId> literals() const { return literals_; }

    bool is_consistent() const;
    /// Subset test (not necessarily proper).
    bool is_subset_of(const Interpretation& other) const;

    friend bool operator==(const Interpretation&, const Interpretation&) = default;
    friend auto operator<=>(const Interpretation&, const Interpretation&) = default;

private:
    std::vector<LiteralId> literals_;
};

} // namespace dlp

#endif
