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

#include "dlp/ground_program.hpp"

#include <algorithm>

namespace dlp {

std::size_t GroundProgram::hash_of(PredicateId p, std::span<const Constant> args) {
    std::uint64_t h = 0xcbf29ce484222325ull ^ p;
    for (Constant c : args) {
        h ^= c.raw() + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    h *= 0xff51afd7ed558ccdull;
    return static_cast<std::size_t>(h ^ (h >> 33));
}

std::optional<AtomId> GroundProgram::find_atom(PredicateId predicate, std::span<const Constant> args) const {
    auto [lo, hi] = index_.equal_range(hash_of(predicate, args));
    for (auto it = lo; it != hi; ++it) {
        const AtomId a = it->second;
        if (atoms_[a].predicate != predicate) continue;
        auto stored = this->args(a);
        if (std::equal(stored.begin(), stored.end(), args.begin(), args.end())) return a;
    }
    return std::nullopt;
}

AtomId GroundProgram::intern_atom(PredicateId predicate, std::span<const Constant> args) {
    if (auto found = find_atom(predicate, args)) return *found;
    const auto id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back({predicate, static_cast<std::uint32_t>(arg_pool_.size()), static_cast<std::uint32_t>(args.size())});
    arg_pool_.insert(arg_pool_.end(), args.begin(), args.end());
    index_.emplace(hash_of(predicate, args), id);
    return id;
}

namespace {

std::vector<Constant> ground_args(const Literal& literal) {
    std::vector<Constant> out;
    out.reserve(literal.atom.args.size());
    for (const Term& t : literal.atom.args) {
        if (!t.is_constant()) throw std::invalid_argument("literal is not ground");
        out.push_back(t.value());
    }
    return out;
}

} // namespace

LiteralId GroundProgram::intern_literal(const Literal& literal) {
    std::vector<Constant> args = ground_args(literal);
    return intern_literal(literal.atom.predicate, args, literal.strongly_negated);
}

std::optional<LiteralId> GroundProgram::find_literal(const Literal& literal) const {
    std::vector<Constant> args = ground_args(literal);
    auto atom = find_atom(literal.atom.predicate, args);
    if (!atom) return std::nullopt;
    return make_literal(*atom, literal.strongly_negated);
}

LiteralId GroundProgram::literal(std::string_view name, bool negated) {
    PredicateId p = symbols_.intern_predicate(name, 0);
    return intern_literal(p, {}, negated);
}

Literal GroundProgram::to_literal(LiteralId l) const {
    Literal out;
    out.atom.predicate = predicate(atom_of(l));
    for (Constant c : args(atom_of(l))) out.atom.args.push_back(Term::constant(c));
    out.strongly_negated = is_strongly_negated(l);
    return out;
}

std::size_t GroundProgram::add_rule(std::span<const LiteralId> head, std::span<const LiteralId> pos_body,
                                    std::span<const LiteralId> neg_body) {
    RuleRecord rec{static_cast<std::uint32_t>(lit_pool_.size()), 0, 0, 0};
    auto append = [&](std::span<const LiteralId> part) {
        auto first = lit_pool_.insert(lit_pool_.end(), part.begin(), part.end());
        std::sort(first, lit_pool_.end());
        lit_pool_.erase(std::unique(first, lit_pool_.end()), lit_pool_.end());
        return static_cast<std::uint32_t>(lit_pool_.end() - first);
    };
    rec.head_size = append(head);
    rec.pos_size = append(pos_body);
    rec.neg_size = append(neg_body);
    rules_.push_back(rec);
    return rules_.size() - 1;
}

GroundRuleView GroundProgram::rule(std::size_t i) const {
    const RuleRecord& r = rules_[i];
    const LiteralId* base = lit_pool_.data() + r.begin;
    return {{base, r.head_size}, {base + r.head_size, r.pos_size}, {base + r.head_size + r.pos_size, r.neg_size}};
}

std::string GroundProgram::literal_text(LiteralId l) const {
    std::string out = is_strongly_negated(l) ? "-" : "";
    const AtomId a = atom_of(l);
    out += symbols_.predicate(predicate(a)).name;
    auto arguments = args(a);
    if (!arguments.empty()) {
        out += '(';
        for (std::size_t i = 0; i < arguments.size(); ++i) {
            if (i != 0) out += ',';
            out += symbols_.constant_text(arguments[i]);
        }
        out += ')';
    }
    return out;
}

std::string GroundProgram::rule_text(std::size_t i) const {
    const GroundRuleView r = rule(i);
    std::string out;
    for (std::size_t k = 0; k < r.head.size(); ++k) {
        if (k != 0) out += " v ";
        out += literal_text(r.head[k]);
    }
    if (!r.pos_body.empty() || !r.neg_body.empty()) {
        out += r.head.empty() ? ":- " : " :- ";
        bool first = true;
        for (LiteralId l : r.pos_body) {
            if (!first) out += ", ";
            out += literal_text(l);
            first = false;
        }
        for (LiteralId l : r.neg_body) {
            if (!first) out += ", ";
            out += "not " + literal_text(l);
            first = false;
        }
    } else if (r.head.empty()) {
        out += ":-";
    }
    out += '.';
    return out;
}

std::string GroundProgram::to_text() const {
    std::string out;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        out += rule_text(i);
        out += '\n';
    }
    return out;
}

Interpretation::Interpretation(std::vector<LiteralId> literals) : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool Interpretation::contains(LiteralId l) const {
    return std::binary_search(literals_.begin(), literals_.end(), l);
}

void Interpretation::insert(LiteralId l) {
    auto it = std::lower_bound(literals_.begin(), literals_.end(), l);
    if (it == literals_.end() || *it != l) literals_.insert(it, l);
}

bool Interpretation::is_consistent() const {
    // complementary literals are adjacent ids, so they are adjacent when sorted
    for (std::size_t i = 1; i < literals_.size(); ++i) {
        if (literals_[i] == complement(literals_[i - 1])) return false;
    }
    return true;
}

bool Interpretation::is_subset_of(const Interpretation& other) const {
    return std::includes(other.literals_.begin(), other.literals_.end(), literals_.begin(), literals_.end());
}

} // namespace dlp
