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

#ifndef DLP_MODEL_HPP
#define DLP_MODEL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dlp/error.hpp"

namespace dlp {

using PredicateId = std::uint32_t;
using SymbolId = std::uint32_t;
using VarIndex = std::uint32_t;

/// A ground term: either an interned symbol or a non-negative integer.
///
/// The two kinds share one 64-bit word; the low bit tags integers, so a
/// symbol spelled "1" (quoted) and the integer 1 never compare equal.
class Constant {
public:
    constexpr Constant() = default;

    static constexpr Constant symbol(SymbolId id) { return Constant((std::uint64_t{id} << 1)); }
    static constexpr Constant integer(std::int64_t value) {
        return Constant((static_cast<std::uint64_t>(value) << 1) | 1u);
    }

    constexpr bool is_integer() const { return (raw_ & 1u) != 0; }
    constexpr bool is_symbol() const { return !is_integer(); }
    constexpr std::int64_t int_value() const { return static_cast<std::int64_t>(raw_ >> 1); }
    constexpr SymbolId symbol_id() const { return static_cast<SymbolId>(raw_ >> 1); }
    constexpr std::uint64_t raw() const { return raw_; }

    friend constexpr bool operator==(Constant, Constant) = default;
    // Structural order on the encoding; not the user-visible order (see compare_constants).
    friend constexpr auto operator<=>(Constant a, Constant b) { return a.raw_ <=> b.raw_; }

private:
    explicit constexpr Constant(std::uint64_t raw) : raw_(raw) {}
    std::uint64_t raw_ = 0;
};

struct ConstantHash {
    std::size_t operator()(Constant c) const noexcept {
        std::uint64_t x = c.raw() * 0x9E3779B97F4A7C15ull;
        return static_cast<std::size_t>(x ^ (x >> 29));
    }
};

/// A variable (indexed within its rule or query) or a constant.
class Term {
public:
    constexpr Term() = default;
    static constexpr Term variable(VarIndex index) { return Term(true, index, Constant{}); }
    static constexpr Term constant(Constant c) { return Term(false, 0, c); }

    constexpr bool is_variable() const { return is_var_; }
    constexpr bool is_constant() const { return !is_var_; }
    constexpr VarIndex var() const { return var_; }
    constexpr Constant value() const { return value_; }

    friend constexpr bool operator==(const Term&, const Term&) = default;
    friend constexpr auto operator<=>(const Term&, const Term&) = default;

private:
    constexpr Term(bool is_var, VarIndex var, Constant value) : is_var_(is_var), var_(var), value_(value) {}
    bool is_var_ = false;
    VarIndex var_ = 0;
    Constant value_{};
};

struct Atom {
    PredicateId predicate = 0;
    std::vector<Term> args;

    bool is_ground() const;
    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// A classical literal: `a` or its strong negation `-a`.
struct Literal {
    Atom atom;
    bool strongly_negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

Literal complement(Literal l);

/// True iff no literal of `literals` has its complement in the set.
bool is_consistent(std::span<const Literal> literals);

enum class BuiltinKind : std::uint8_t {
    Int,    // #int(X)
    Succ,   // #succ(X, Y)
    Less,
    LessEq,
    Greater,
    GreaterEq,
    Equal,
    NotEqual,
    Plus,   // plus(X, Y, Z)  <=>  Z = X + Y
    Times,  // times(X, Y, Z) <=>  Z = X * Y
};

std::size_t builtin_arity(BuiltinKind kind);
bool is_comparison(BuiltinKind kind);
bool is_arithmetic(BuiltinKind kind);

struct BuiltinAtom {
    BuiltinKind kind = BuiltinKind::Equal;
    std::vector<Term> args;

    friend bool operator==(const BuiltinAtom&, const BuiltinAtom&) = default;
};

struct Rule {
    std::vector<Literal> head;
    std::vector<Literal> pos_body;
    std::vector<Literal> neg_body;
    std::vector<BuiltinAtom> builtins;
    /// Names of the rule's variables, indexed by VarIndex. Anonymous
    /// variables are distinct entries named "_".
    std::vector<std::string> variables;
    SourceSpan span;

    bool is_constraint() const { return head.empty(); }
    bool is_fact() const {
        return head.size() == 1 && pos_body.empty() && neg_body.empty() && builtins.empty();
    }
};

/// Conjunctive query: `l1, ..., not lk ?`.
struct Query {
    std::vector<Literal> positive;
    std::vector<Literal> negative;
    std::vector<std::string> variables;
    SourceSpan span;

    bool is_ground() const { return variables.empty(); }
};

/// Interned predicate names (with their arity) and constant symbols.
class SymbolTable {
public:
    struct PredicateInfo {
        std::string name;
        std::size_t arity;
    };

    /// Returns the id for `name`; throws ArityError if `name` was already
    /// interned with a different arity.
    PredicateId intern_predicate(std::string_view name, std::size_t arity, const SourceSpan& where = {});
    std::optional<PredicateId> find_predicate(std::string_view name) const;
    const PredicateInfo& predicate(PredicateId id) const { return predicates_[id]; }
    std::size_t predicate_count() const { return predicates_.size(); }

    SymbolId intern_symbol(std::string_view text);
    std::optional<SymbolId> find_symbol(std::string_view text) const;
    const std::string& symbol(SymbolId id) const { return symbols_[id]; }
    std::size_t symbol_count() const { return symbols_.size(); }

    std::string constant_text(Constant c) const;

private:
    std::vector<PredicateInfo> predicates_;
    std::unordered_map<std::string, PredicateId> predicate_ids_;
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, SymbolId> symbol_ids_;
};

/// Total order on constants: integers numerically, all integers before all
/// symbols, symbols by byte-wise lexicographic order of their text.
std::strong_ordering compare_constants(Constant a, Constant b, const SymbolTable& symbols);

struct Program {
    std::vector<Rule> rules;
    SymbolTable symbols;
    std::int64_t max_int = 0;
    std::optional<Query> query;
};

/// U_P: the constants occurring in the program, plus 0..max_int when an
/// integer constant or an integer built-in (#int, #succ, +, *) occurs.
/// Sorted by compare_constants.
std::vector<Constant> herbrand_universe(const Program& program);

/// B_P: every predicate applied to every U_P tuple of matching arity, in
/// both signs. Exponential in the arity; meant for small programs.
std::vector<Literal> herbrand_base(const Program& program);

std::string to_string(const Term& term, const SymbolTable& symbols, std::span<const std::string> variables = {});
std::string to_string(const Literal& literal, const SymbolTable& symbols,
                      std::span<const std::string> variables = {});
std::string to_string(const BuiltinAtom& builtin, const SymbolTable& symbols,
                      std::span<const std::string> variables = {});
std::string to_string(const Rule& rule, const SymbolTable& symbols);
std::string to_string(const Query& query, const SymbolTable& symbols);
std::string to_string(const Program& program);

} // namespace dlp

#endif
