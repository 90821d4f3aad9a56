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

#include "dlp/model.hpp"

#include <algorithm>
#include <set>

namespace dlp {

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_constant(); });
}

Literal complement(Literal l) {
    l.strongly_negated = !l.strongly_negated;
    return l;
}

bool is_consistent(std::span<const Literal> literals) {
    std::set<const Literal*, bool (*)(const Literal*, const Literal*)> seen(
        [](const Literal* a, const Literal* b) { return *a < *b; });
    for (const Literal& l : literals) seen.insert(&l);
    for (const Literal& l : literals) {
        Literal c = complement(l);
        if (seen.count(&c) != 0) return false;
    }
    return true;
}

std::size_t builtin_arity(BuiltinKind kind) {
    switch (kind) {
    case BuiltinKind::Int: return 1;
    case BuiltinKind::Plus:
    case BuiltinKind::Times: return 3;
    default: return 2;
    }
}

bool is_comparison(BuiltinKind kind) {
    switch (kind) {
    case BuiltinKind::Less:
    case BuiltinKind::LessEq:
    case BuiltinKind::Greater:
    case BuiltinKind::GreaterEq:
    case BuiltinKind::Equal:
    case BuiltinKind::NotEqual: return true;
    default: return false;
    }
}

bool is_arithmetic(BuiltinKind kind) { return kind == BuiltinKind::Plus || kind == BuiltinKind::Times; }

PredicateId SymbolTable::intern_predicate(std::string_view name, std::size_t arity, const SourceSpan& where) {
    auto it = predicate_ids_.find(std::string(name));
    if (it != predicate_ids_.end()) {
        const PredicateInfo& info = predicates_[it->second];
        if (info.arity != arity) {
            throw ArityError(where, "predicate " + info.name + " used with arity " + std::to_string(arity) +
                                        " but previously with arity " + std::to_string(info.arity));
        }
        return it->second;
    }
    auto id = static_cast<PredicateId>(predicates_.size());
    predicates_.push_back({std::string(name), arity});
    predicate_ids_.emplace(std::string(name), id);
    return id;
}

std::optional<PredicateId> SymbolTable::find_predicate(std::string_view name) const {
    auto it = predicate_ids_.find(std::string(name));
    if (it == predicate_ids_.end()) return std::nullopt;
    return it->second;
}

SymbolId SymbolTable::intern_symbol(std::string_view text) {
    auto [it, inserted] = symbol_ids_.try_emplace(std::string(text), static_cast<SymbolId>(symbols_.size()));
    if (inserted) symbols_.emplace_back(text);
    return it->second;
}

std::optional<SymbolId> SymbolTable::find_symbol(std::string_view text) const {
    auto it = symbol_ids_.find(std::string(text));
    if (it == symbol_ids_.end()) return std::nullopt;
    return it->second;
}

std::string SymbolTable::constant_text(Constant c) const {
    return c.is_integer() ? std::to_string(c.int_value()) : symbols_[c.symbol_id()];
}

std::strong_ordering compare_constants(Constant a, Constant b, const SymbolTable& symbols) {
    if (a.is_integer() != b.is_integer()) {
        return a.is_integer() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a.is_integer()) return a.int_value() <=> b.int_value();
    if (a.symbol_id() == b.symbol_id()) return std::strong_ordering::equal;
    int c = symbols.symbol(a.symbol_id()).compare(symbols.symbol(b.symbol_id()));
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

namespace {

void collect(const Atom& atom, std::set<Constant>& out, bool& saw_integer) {
    for (const Term& t : atom.args) {
        if (!t.is_constant()) continue;
        out.insert(t.value());
        saw_integer = saw_integer || t.value().is_integer();
    }
}

} // namespace

std::vector<Constant> herbrand_universe(const Program& program) {
    std::set<Constant> constants;
    bool integers = false;
    for (const Rule& rule : program.rules) {
        for (const auto* part : {&rule.head, &rule.pos_body, &rule.neg_body}) {
            for (const Literal& l : *part) collect(l.atom, constants, integers);
        }
        for (const BuiltinAtom& b : rule.builtins) {
            if (!is_comparison(b.kind)) integers = true;
            for (const Term& t : b.args) {
                if (!t.is_constant()) continue;
                constants.insert(t.value());
                integers = integers || t.value().is_integer();
            }
        }
    }
    if (integers) {
        for (std::int64_t i = 0; i <= program.max_int; ++i) constants.insert(Constant::integer(i));
    }
    std::vector<Constant> out(constants.begin(), constants.end());
    std::sort(out.begin(), out.end(),
              [&](Constant a, Constant b) { return compare_constants(a, b, program.symbols) < 0; });
    return out;
}

std::vector<Literal> herbrand_base(const Program& program) {
    const std::vector<Constant> universe = herbrand_universe(program);
    std::vector<Literal> base;
    for (PredicateId p = 0; p < program.symbols.predicate_count(); ++p) {
        const std::size_t arity = program.symbols.predicate(p).arity;
        if (arity > 0 && universe.empty()) continue;
        std::vector<std::size_t> digits(arity, 0);
        for (;;) {
            Atom atom{p, {}};
            for (std::size_t d : digits) atom.args.push_back(Term::constant(universe[d]));
            base.push_back({atom, false});
            base.push_back({std::move(atom), true});
            std::size_t i = 0;
            while (i < arity && ++digits[i] == universe.size()) digits[i++] = 0;
            if (i == arity) break;
        }
    }
    return base;
}

std::string to_string(const Term& term, const SymbolTable& symbols, std::span<const std::string> variables) {
    if (term.is_constant()) return symbols.constant_text(term.value());
    if (term.var() < variables.size()) return variables[term.var()];
    return "V" + std::to_string(term.var());
}

std::string to_string(const Literal& literal, const SymbolTable& symbols, std::span<const std::string> variables) {
    std::string out = literal.strongly_negated ? "-" : "";
    out += symbols.predicate(literal.atom.predicate).name;
    if (!literal.atom.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < literal.atom.args.size(); ++i) {
            if (i != 0) out += ',';
            out += to_string(literal.atom.args[i], symbols, variables);
        }
        out += ')';
    }
    return out;
}

std::string to_string(const BuiltinAtom& builtin, const SymbolTable& symbols, std::span<const std::string> variables) {
    auto arg = [&](std::size_t i) { return to_string(builtin.args[i], symbols, variables); };
    switch (builtin.kind) {
    case BuiltinKind::Int: return "#int(" + arg(0) + ")";
    case BuiltinKind::Succ: return "#succ(" + arg(0) + "," + arg(1) + ")";
    case BuiltinKind::Less: return arg(0) + " < " + arg(1);
    case BuiltinKind::LessEq: return arg(0) + " <= " + arg(1);
    case BuiltinKind::Greater: return arg(0) + " > " + arg(1);
    case BuiltinKind::GreaterEq: return arg(0) + " >= " + arg(1);
    case BuiltinKind::Equal: return arg(0) + " = " + arg(1);
    case BuiltinKind::NotEqual: return arg(0) + " != " + arg(1);
    case BuiltinKind::Plus: return arg(2) + " = " + arg(0) + " + " + arg(1);
    case BuiltinKind::Times: return arg(2) + " = " + arg(0) + " * " + arg(1);
    }
    return {};
}

std::string to_string(const Rule& rule, const SymbolTable& symbols) {
    std::string out;
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
        if (i != 0) out += " v ";
        out += to_string(rule.head[i], symbols, rule.variables);
    }
    std::vector<std::string> body;
    for (const Literal& l : rule.pos_body) body.push_back(to_string(l, symbols, rule.variables));
    for (const Literal& l : rule.neg_body) body.push_back("not " + to_string(l, symbols, rule.variables));
    for (const BuiltinAtom& b : rule.builtins) body.push_back(to_string(b, symbols, rule.variables));
    if (!body.empty()) {
        out += rule.head.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i != 0) out += ", ";
            out += body[i];
        }
    }
    out += '.';
    return out;
}

std::string to_string(const Query& query, const SymbolTable& symbols) {
    std::string out;
    bool first = true;
    for (const Literal& l : query.positive) {
        if (!first) out += ", ";
        out += to_string(l, symbols, query.variables);
        first = false;
    }
    for (const Literal& l : query.negative) {
        if (!first) out += ", ";
        out += "not " + to_string(l, symbols, query.variables);
        first = false;
    }
    return out + "?";
}

std::string to_string(const Program& program) {
    std::string out;
    for (const Rule& rule : program.rules) {
        out += to_string(rule, program.symbols);
        out += '\n';
    }
    if (program.query) {
        out += to_string(*program.query, program.symbols);
        out += '\n';
    }
    return out;
}

} // namespace dlp
