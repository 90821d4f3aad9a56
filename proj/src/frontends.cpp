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

#include "dlp/frontends.hpp"

#include <algorithm>
#include <map>

#include "dlp/grounder.hpp"

namespace dlp {

namespace {

struct SubstitutionLess {
    const SymbolTable* symbols;
    bool operator()(const Substitution& a, const Substitution& b) const {
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            const auto c = compare_constants(a[i], b[i], *symbols);
            if (c != 0) return c < 0;
        }
        return a.size() < b.size();
    }
};

class QueryMatcher {
public:
    QueryMatcher(const GroundProgram& gp, const Query& query, const Interpretation& x,
                 std::span<const Constant> universe)
        : gp_(gp), query_(query), x_(x), universe_(universe), binding_(query.variables.size()),
          named_(named_variables(query)) {
        for (LiteralId l : x.literals()) {
            by_predicate_[{gp.predicate(atom_of(l)), is_strongly_negated(l)}].push_back(l);
        }
    }

    std::vector<Substitution> run() {
        match(0);
        return std::move(found_);
    }

private:
    bool unify(const Atom& atom, std::span<const Constant> args, std::vector<VarIndex>& bound) {
        for (std::size_t i = 0; i < args.size(); ++i) {
            const Term& t = atom.args[i];
            if (!t.is_variable()) {
                if (t.value() != args[i]) return false;
                continue;
            }
            auto& slot = binding_[t.var()];
            if (slot) {
                if (*slot != args[i]) return false;
            } else {
                slot = args[i];
                bound.push_back(t.var());
            }
        }
        return true;
    }

    void match(std::size_t i) {
        if (i == query_.positive.size()) {
            free_.clear();
            for (const Literal& n : query_.negative) {
                for (const Term& t : n.atom.args) {
                    if (t.is_variable() && !binding_[t.var()] &&
                        std::find(free_.begin(), free_.end(), t.var()) == free_.end()) {
                        free_.push_back(t.var());
                    }
                }
            }
            generate(0);
            return;
        }
        const Literal& lit = query_.positive[i];
        auto it = by_predicate_.find({lit.atom.predicate, lit.strongly_negated});
        if (it == by_predicate_.end()) return;
        std::vector<VarIndex> bound;
        for (LiteralId l : it->second) {
            bound.clear();
            if (unify(lit.atom, gp_.args(atom_of(l)), bound)) match(i + 1);
            for (VarIndex v : bound) binding_[v].reset();
        }
    }

    void generate(std::size_t k) {
        if (k < free_.size()) {
            for (Constant c : universe_) {
                binding_[free_[k]] = c;
                generate(k + 1);
            }
            binding_[free_[k]].reset();
            return;
        }
        std::vector<Constant> args;
        for (const Literal& n : query_.negative) {
            args.clear();
            for (const Term& t : n.atom.args) args.push_back(t.is_variable() ? *binding_[t.var()] : t.value());
            auto atom = gp_.find_atom(n.atom.predicate, args);
            if (atom && x_.contains(make_literal(*atom, n.strongly_negated))) return;
        }
        Substitution s;
        for (VarIndex v : named_) s.push_back(*binding_[v]);
        found_.push_back(std::move(s));
    }

    const GroundProgram& gp_;
    const Query& query_;
    const Interpretation& x_;
    std::span<const Constant> universe_;
    std::vector<std::optional<Constant>> binding_;
    std::vector<VarIndex> named_;
    std::vector<VarIndex> free_;
    std::map<std::pair<PredicateId, bool>, std::vector<LiteralId>> by_predicate_;
    std::vector<Substitution> found_;
};

std::vector<Substitution> normalized(std::vector<Substitution> subs, const SymbolTable& symbols) {
    SubstitutionLess less{&symbols};
    std::sort(subs.begin(), subs.end(), less);
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
    return subs;
}

} // namespace

std::vector<VarIndex> named_variables(const Query& query) {
    std::vector<VarIndex> out;
    for (VarIndex v = 0; v < query.variables.size(); ++v) {
        if (query.variables[v] != "_") out.push_back(v);
    }
    return out;
}

std::vector<Substitution> query_substitutions(const GroundProgram& gp, const Query& query,
                                              const Interpretation& x, std::span<const Constant> universe) {
    QueryMatcher matcher(gp, query, x, universe);
    return normalized(matcher.run(), gp.symbols());
}

QueryAnswer brave(const GroundProgram& gp, const Query& query, std::span<const Constant> universe,
                  const QueryOptions& options) {
    QueryAnswer answer;
    answer.mode = QueryMode::Brave;
    answer.ground = named_variables(query).empty();
    SubstitutionLess less{&gp.symbols()};
    std::vector<Substitution> all;
    ModelGenerator generator(gp);
    while (auto x = generator.next()) {
        ++answer.answer_sets_examined;
        auto subs = query_substitutions(gp, query, *x, universe);
        if (subs.empty()) continue;
        if (!answer.witness) answer.witness = *x;
        std::vector<Substitution> merged;
        std::set_union(all.begin(), all.end(), subs.begin(), subs.end(), std::back_inserter(merged), less);
        all = std::move(merged);
        if (answer.ground && options.stop_early) break;
    }
    answer.no_answer_sets = answer.answer_sets_examined == 0;
    answer.result = !all.empty();
    answer.substitutions = std::move(all);
    return answer;
}

QueryAnswer cautious(const GroundProgram& gp, const Query& query, std::span<const Constant> universe,
                     const QueryOptions& options) {
    QueryAnswer answer;
    answer.mode = QueryMode::Cautious;
    answer.ground = named_variables(query).empty();
    SubstitutionLess less{&gp.symbols()};
    std::vector<Substitution> common;
    ModelGenerator generator(gp);
    while (auto x = generator.next()) {
        auto subs = query_substitutions(gp, query, *x, universe);
        if (answer.answer_sets_examined++ == 0) {
            common = std::move(subs);
        } else {
            std::vector<Substitution> kept;
            std::set_intersection(common.begin(), common.end(), subs.begin(), subs.end(), std::back_inserter(kept),
                                  less);
            common = std::move(kept);
        }
        if (common.empty()) {
            if (!answer.witness) answer.witness = *x;
            if (options.stop_early) break;
        }
    }
    answer.no_answer_sets = answer.answer_sets_examined == 0;
    answer.result = answer.no_answer_sets || !common.empty();
    answer.substitutions = std::move(common);
    return answer;
}

QueryAnswer brave(const Program& program, const Query& query, const QueryOptions& options) {
    GroundProgram gp = ground_program(program);
    const auto universe = herbrand_universe(program);
    return brave(gp, query, universe, options);
}

QueryAnswer cautious(const Program& program, const Query& query, const QueryOptions& options) {
    GroundProgram gp = ground_program(program);
    const auto universe = herbrand_universe(program);
    return cautious(gp, query, universe, options);
}

std::string format_answer(const QueryAnswer& answer, const Query& query, const SymbolTable& symbols) {
    if (answer.mode == QueryMode::Cautious && answer.no_answer_sets) return "true (no answer sets)\n";
    if (answer.ground) return answer.result ? "true\n" : "false\n";
    if (answer.substitutions.empty()) return "false\n";
    const auto named = named_variables(query);
    std::string out;
    for (const Substitution& s : answer.substitutions) {
        for (std::size_t i = 0; i < named.size(); ++i) {
            if (i != 0) out += ", ";
            out += query.variables[named[i]] + "=" + symbols.constant_text(s[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace dlp
