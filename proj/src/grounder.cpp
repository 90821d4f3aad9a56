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

#include "dlp/grounder.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace dlp {

// ---------------------------------------------------------------------------
// Safety
// ---------------------------------------------------------------------------

void check_safety(const Rule& rule) {
    std::vector<char> safe(rule.variables.size(), 0);
    auto is_safe = [&](const Term& t) { return t.is_constant() || safe[t.var()]; };
    auto mark = [&](const Term& t) {
        if (t.is_variable() && !safe[t.var()]) {
            safe[t.var()] = 1;
            return true;
        }
        return false;
    };
    for (const Literal& l : rule.pos_body) {
        for (const Term& t : l.atom.args) mark(t);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (const BuiltinAtom& b : rule.builtins) {
            switch (b.kind) {
            case BuiltinKind::Int: changed |= mark(b.args[0]); break;
            case BuiltinKind::Succ:
                if (is_safe(b.args[0])) changed |= mark(b.args[1]);
                break;
            case BuiltinKind::Plus:
            case BuiltinKind::Times:
                if (is_safe(b.args[0]) && is_safe(b.args[1])) changed |= mark(b.args[2]);
                break;
            default: break;
            }
        }
    }
    for (VarIndex v = 0; v < rule.variables.size(); ++v) {
        if (!safe[v]) throw SafetyError(rule.span, rule.variables[v]);
    }
}

// ---------------------------------------------------------------------------
// Dependency graph
// ---------------------------------------------------------------------------

bool DependencyGraph::has_edge(PredicateId from, PredicateId to, bool negative) const {
    return std::binary_search(edges.begin(), edges.end(), Edge{from, to, negative});
}

bool DependencyGraph::is_recursive(std::size_t component) const {
    const auto& members = components[component];
    if (members.size() > 1) return true;
    const PredicateId p = members.front();
    return has_edge(p, p, false) || has_edge(p, p, true);
}

DependencyGraph build_dependency_graph(const Program& program) {
    DependencyGraph g;
    g.predicate_count = program.symbols.predicate_count();
    for (const Rule& rule : program.rules) {
        for (const Literal& h : rule.head) {
            for (const Literal& b : rule.pos_body) g.edges.push_back({b.atom.predicate, h.atom.predicate, false});
            for (const Literal& b : rule.neg_body) g.edges.push_back({b.atom.predicate, h.atom.predicate, true});
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

    const std::size_t n = g.predicate_count;
    std::vector<std::vector<PredicateId>> successors(n);
    for (const auto& e : g.edges) {
        if (successors[e.from].empty() || successors[e.from].back() != e.to) successors[e.from].push_back(e.to);
    }

    // Iterative Tarjan; components come out dependents-first.
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<PredicateId> stack;
    std::vector<std::pair<PredicateId, std::size_t>> frames;
    std::size_t counter = 0;
    for (PredicateId root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        frames.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            auto& [v, next] = frames.back();
            if (next < successors[v].size()) {
                PredicateId w = successors[v][next++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const PredicateId done = v;
            frames.pop_back();
            if (!frames.empty()) {
                PredicateId parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                std::vector<PredicateId> component;
                PredicateId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    component.push_back(w);
                } while (w != done);
                std::sort(component.begin(), component.end());
                g.components.push_back(std::move(component));
            }
        }
    }
    std::reverse(g.components.begin(), g.components.end());
    g.component_of.assign(n, 0);
    for (std::size_t c = 0; c < g.components.size(); ++c) {
        for (PredicateId p : g.components[c]) g.component_of[p] = c;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Instantiation
// ---------------------------------------------------------------------------

namespace {

enum class Range : std::uint8_t {
    Full,    // everything present when the rule evaluation starts
    Old,     // before the current semi-naive round
    Delta,   // added in the previous round
    Current, // Old + Delta
};

struct Step {
    enum class Kind : std::uint8_t { Match, Builtin, Generate } kind;
    std::size_t index;
    std::uint64_t bound_mask = 0;
};

struct Plan {
    std::vector<Step> steps;
    std::vector<Range> ranges; // per positive body literal
};

bool term_bound(const Term& t, const std::vector<char>& bound) { return t.is_constant() || bound[t.var()]; }

void bind(const Term& t, std::vector<char>& bound) {
    if (t.is_variable()) bound[t.var()] = 1;
}

// Evaluable without generating values; binds outputs into `bound` if so.
bool builtin_ready(const BuiltinAtom& b, std::vector<char>& bound) {
    switch (b.kind) {
    case BuiltinKind::Int: return term_bound(b.args[0], bound);
    case BuiltinKind::Succ:
        if (term_bound(b.args[0], bound)) {
            bind(b.args[1], bound);
            return true;
        }
        if (term_bound(b.args[1], bound)) {
            bind(b.args[0], bound);
            return true;
        }
        return false;
    case BuiltinKind::Plus:
    case BuiltinKind::Times:
        if (term_bound(b.args[0], bound) && term_bound(b.args[1], bound)) {
            bind(b.args[2], bound);
            return true;
        }
        return false;
    default: return term_bound(b.args[0], bound) && term_bound(b.args[1], bound);
    }
}

/// Greedy join order: evaluable built-ins as early as possible, then the
/// `first` literal, then the literal with most bound arguments (textual
/// order on ties), #int generators last.
Plan make_plan(const Rule& rule, std::optional<std::size_t> first, std::vector<Range> ranges) {
    Plan plan;
    plan.ranges = std::move(ranges);
    std::vector<char> bound(rule.variables.size(), 0);
    std::vector<char> lit_done(rule.pos_body.size(), 0);
    std::vector<char> builtin_done(rule.builtins.size(), 0);
    std::size_t remaining = rule.pos_body.size() + rule.builtins.size();

    auto place_literal = [&](std::size_t i) {
        std::uint64_t mask = 0;
        const auto& args = rule.pos_body[i].atom.args;
        for (std::size_t k = 0; k < args.size() && k < 64; ++k) {
            if (term_bound(args[k], bound)) mask |= std::uint64_t{1} << k;
        }
        plan.steps.push_back({Step::Kind::Match, i, mask});
        for (const Term& t : args) bind(t, bound);
        lit_done[i] = 1;
        --remaining;
    };

    while (remaining > 0) {
        bool progressed = false;
        for (std::size_t b = 0; b < rule.builtins.size(); ++b) {
            if (builtin_done[b]) continue;
            if (builtin_ready(rule.builtins[b], bound)) {
                plan.steps.push_back({Step::Kind::Builtin, b, 0});
                builtin_done[b] = 1;
                --remaining;
                progressed = true;
            }
        }
        if (progressed) continue;
        if (first && !lit_done[*first]) {
            place_literal(*first);
            continue;
        }
        std::optional<std::size_t> best;
        std::size_t best_bound = 0;
        for (std::size_t i = 0; i < rule.pos_body.size(); ++i) {
            if (lit_done[i]) continue;
            std::size_t n = 0;
            for (const Term& t : rule.pos_body[i].atom.args) n += term_bound(t, bound) ? 1 : 0;
            if (!best || n > best_bound) {
                best = i;
                best_bound = n;
            }
        }
        if (best) {
            place_literal(*best);
            continue;
        }
        for (std::size_t b = 0; b < rule.builtins.size(); ++b) {
            if (!builtin_done[b] && rule.builtins[b].kind == BuiltinKind::Int) {
                plan.steps.push_back({Step::Kind::Generate, b, 0});
                bind(rule.builtins[b].args[0], bound);
                builtin_done[b] = 1;
                --remaining;
                progressed = true;
                break;
            }
        }
        if (!progressed) throw SafetyError(rule.span, "?");
    }
    return plan;
}

struct ArgIndex {
    std::size_t upto = 0;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
};

struct Relation {
    std::vector<AtomId> atoms;
    std::size_t old_end = 0;
    std::size_t delta_end = 0;
    std::unordered_map<std::uint64_t, ArgIndex> indices;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
}

class Instantiator {
public:
    Instantiator(GroundProgram& gp, GroundingStats& stats) : gp_(gp), stats_(stats) {
        relations_.resize(gp.symbols().predicate_count() * 2);
    }

    Relation& relation(PredicateId p, bool negated) {
        const std::size_t k = std::size_t{p} * 2 + (negated ? 1 : 0);
        if (k >= relations_.size()) relations_.resize(std::max(k + 1, gp_.symbols().predicate_count() * 2));
        return relations_[k];
    }

    bool is_candidate(LiteralId l) const { return l < candidate_.size() && candidate_[l]; }

    bool add_candidate(LiteralId l) {
        if (l >= candidate_.size()) candidate_.resize(std::max<std::size_t>(l + 1, candidate_.size() * 2), 0);
        if (candidate_[l]) return false;
        candidate_[l] = 1;
        const AtomId a = atom_of(l);
        relation(gp_.predicate(a), is_strongly_negated(l)).atoms.push_back(a);
        return true;
    }

    template <class Sink>
    void instantiate(const Rule& rule, const Plan& plan, Sink&& sink) {
        rule_ = &rule;
        plan_ = &plan;
        values_.assign(rule.variables.size(), Constant{});
        bound_.assign(rule.variables.size(), 0);
        matched_.assign(rule.pos_body.size(), 0);
        bounds_.clear();
        for (const Step& s : plan.steps) {
            if (s.kind != Step::Kind::Match) {
                bounds_.emplace_back(0, 0);
                continue;
            }
            const Literal& lit = rule.pos_body[s.index];
            Relation& rel = relation(lit.atom.predicate, lit.strongly_negated);
            switch (plan.ranges[s.index]) {
            case Range::Full: bounds_.emplace_back(0, rel.atoms.size()); break;
            case Range::Old: bounds_.emplace_back(0, rel.old_end); break;
            case Range::Delta: bounds_.emplace_back(rel.old_end, rel.delta_end); break;
            case Range::Current: bounds_.emplace_back(0, rel.delta_end); break;
            }
        }
        run(0, sink);
    }

private:
    Constant value_of(const Term& t) const { return t.is_constant() ? t.value() : values_[t.var()]; }

    template <class Sink>
    void run(std::size_t step_index, Sink& sink) {
        if (step_index == plan_->steps.size()) {
            emit(sink);
            return;
        }
        const Step& step = plan_->steps[step_index];
        switch (step.kind) {
        case Step::Kind::Match: match(step_index, step, sink); break;
        case Step::Kind::Builtin: {
            const std::size_t mark = trail_.size();
            if (evaluate(rule_->builtins[step.index])) run(step_index + 1, sink);
            undo(mark);
            break;
        }
        case Step::Kind::Generate: {
            const Term& t = rule_->builtins[step.index].args[0];
            for (std::int64_t v = 0; v <= gp_.max_int(); ++v) {
                values_[t.var()] = Constant::integer(v);
                bound_[t.var()] = 1;
                run(step_index + 1, sink);
            }
            bound_[t.var()] = 0;
            break;
        }
        }
    }

    template <class Sink>
    void match(std::size_t step_index, const Step& step, Sink& sink) {
        const Literal& lit = rule_->pos_body[step.index];
        Relation& rel = relation(lit.atom.predicate, lit.strongly_negated);
        const auto [lo, hi] = bounds_[step_index];
        if (lo >= hi) return;

        auto try_atom = [&](AtomId a) {
            const std::size_t mark = trail_.size();
            if (unify(lit.atom.args, gp_.args(a))) {
                matched_[step.index] = a;
                run(step_index + 1, sink);
            }
            undo(mark);
        };

        if (step.bound_mask == 0 || hi - lo < 8) {
            for (std::size_t p = lo; p < hi; ++p) try_atom(rel.atoms[p]);
            return;
        }
        ArgIndex& index = rel.indices[step.bound_mask];
        for (; index.upto < rel.atoms.size(); ++index.upto) {
            auto args = gp_.args(rel.atoms[index.upto]);
            index.buckets[key_of(args, step.bound_mask)].push_back(static_cast<std::uint32_t>(index.upto));
        }
        std::uint64_t key = 0x51ed27u;
        for (std::size_t k = 0; k < lit.atom.args.size() && k < 64; ++k) {
            if (step.bound_mask & (std::uint64_t{1} << k)) key = mix(key, value_of(lit.atom.args[k]).raw());
        }
        auto it = index.buckets.find(key);
        if (it == index.buckets.end()) return;
        const std::vector<std::uint32_t>& bucket = it->second;
        auto start = std::lower_bound(bucket.begin(), bucket.end(), static_cast<std::uint32_t>(lo)) - bucket.begin();
        const std::size_t size = bucket.size();
        for (std::size_t k = static_cast<std::size_t>(start); k < size && bucket[k] < hi; ++k) {
            try_atom(rel.atoms[bucket[k]]);
        }
    }

    static std::uint64_t key_of(std::span<const Constant> args, std::uint64_t mask) {
        std::uint64_t key = 0x51ed27u;
        for (std::size_t k = 0; k < args.size() && k < 64; ++k) {
            if (mask & (std::uint64_t{1} << k)) key = mix(key, args[k].raw());
        }
        return key;
    }

    bool unify(const std::vector<Term>& pattern, std::span<const Constant> args) {
        for (std::size_t k = 0; k < pattern.size(); ++k) {
            const Term& t = pattern[k];
            if (t.is_constant()) {
                if (t.value() != args[k]) return false;
            } else if (bound_[t.var()]) {
                if (values_[t.var()] != args[k]) return false;
            } else {
                assign(t.var(), args[k]);
            }
        }
        return true;
    }

    void assign(VarIndex v, Constant c) {
        values_[v] = c;
        bound_[v] = 1;
        trail_.push_back(v);
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            bound_[trail_.back()] = 0;
            trail_.pop_back();
        }
    }

    // Binds or checks `t` against `c`.
    bool unify_term(const Term& t, Constant c) {
        if (t.is_variable() && !bound_[t.var()]) {
            assign(t.var(), c);
            return true;
        }
        return value_of(t) == c;
    }

    bool evaluate(const BuiltinAtom& b) {
        const std::int64_t max_int = gp_.max_int();
        switch (b.kind) {
        case BuiltinKind::Int: {
            Constant c = value_of(b.args[0]);
            return c.is_integer() && c.int_value() <= max_int;
        }
        case BuiltinKind::Succ: {
            if (term_bound(b.args[0], bound_)) {
                Constant x = value_of(b.args[0]);
                if (!x.is_integer() || x.int_value() + 1 > max_int) return false;
                return unify_term(b.args[1], Constant::integer(x.int_value() + 1));
            }
            Constant y = value_of(b.args[1]);
            if (!y.is_integer() || y.int_value() < 1 || y.int_value() > max_int) return false;
            return unify_term(b.args[0], Constant::integer(y.int_value() - 1));
        }
        case BuiltinKind::Plus:
        case BuiltinKind::Times: {
            Constant x = value_of(b.args[0]);
            Constant y = value_of(b.args[1]);
            if (!x.is_integer() || !y.is_integer()) return false;
            const std::int64_t a = x.int_value();
            const std::int64_t c = y.int_value();
            std::int64_t r = 0;
            bool overflow = false;
            if (b.kind == BuiltinKind::Plus) {
                overflow = __builtin_add_overflow(a, c, &r);
            } else {
                overflow = __builtin_mul_overflow(a, c, &r);
            }
            if (overflow || r > max_int || r < 0) {
                ++stats_.arithmetic_overflows;
                return false;
            }
            return unify_term(b.args[2], Constant::integer(r));
        }
        case BuiltinKind::Equal: return value_of(b.args[0]) == value_of(b.args[1]);
        case BuiltinKind::NotEqual: return value_of(b.args[0]) != value_of(b.args[1]);
        default: break;
        }
        const auto order = compare_constants(value_of(b.args[0]), value_of(b.args[1]), gp_.symbols());
        switch (b.kind) {
        case BuiltinKind::Less: return order < 0;
        case BuiltinKind::LessEq: return order <= 0;
        case BuiltinKind::Greater: return order > 0;
        case BuiltinKind::GreaterEq: return order >= 0;
        default: return false;
        }
    }

    LiteralId intern(const Literal& lit) {
        scratch_.clear();
        for (const Term& t : lit.atom.args) scratch_.push_back(value_of(t));
        return gp_.intern_literal(lit.atom.predicate, scratch_, lit.strongly_negated);
    }

    template <class Sink>
    void emit(Sink& sink) {
        ++stats_.instantiated_rules;
        GroundRule& g = out_;
        g.head.clear();
        g.pos_body.clear();
        g.neg_body.clear();
        for (const Literal& l : rule_->head) g.head.push_back(intern(l));
        for (std::size_t i = 0; i < rule_->pos_body.size(); ++i) {
            g.pos_body.push_back(make_literal(matched_[i], rule_->pos_body[i].strongly_negated));
        }
        for (const Literal& l : rule_->neg_body) g.neg_body.push_back(intern(l));
        sink(g);
    }

    GroundProgram& gp_;
    GroundingStats& stats_;
    std::vector<Relation> relations_;
    std::vector<char> candidate_;

    const Rule* rule_ = nullptr;
    const Plan* plan_ = nullptr;
    std::vector<Constant> values_;
    std::vector<char> bound_;
    std::vector<VarIndex> trail_;
    std::vector<AtomId> matched_;
    std::vector<std::pair<std::size_t, std::size_t>> bounds_;
    std::vector<Constant> scratch_;
    GroundRule out_;
};

/// Ground rules collected before simplification, stored flat.
class RuleBuffer {
public:
    struct Record {
        std::size_t begin;
        std::uint32_t head, pos, neg;
    };

    void add(const GroundRule& g) {
        records_.push_back({pool_.size(), static_cast<std::uint32_t>(g.head.size()),
                            static_cast<std::uint32_t>(g.pos_body.size()),
                            static_cast<std::uint32_t>(g.neg_body.size())});
        pool_.insert(pool_.end(), g.head.begin(), g.head.end());
        pool_.insert(pool_.end(), g.pos_body.begin(), g.pos_body.end());
        pool_.insert(pool_.end(), g.neg_body.begin(), g.neg_body.end());
    }

    std::size_t size() const { return records_.size(); }
    std::size_t literal_total() const { return pool_.size(); }
    std::span<const LiteralId> head(std::size_t r) const { return {pool_.data() + records_[r].begin, records_[r].head}; }
    std::span<const LiteralId> pos(std::size_t r) const {
        return {pool_.data() + records_[r].begin + records_[r].head, records_[r].pos};
    }
    std::span<const LiteralId> neg(std::size_t r) const {
        return {pool_.data() + records_[r].begin + records_[r].head + records_[r].pos, records_[r].neg};
    }

private:
    std::vector<Record> records_;
    std::vector<LiteralId> pool_;
};

bool intersects(std::span<const LiteralId> a, std::span<const LiteralId> b) {
    for (LiteralId x : a) {
        if (std::find(b.begin(), b.end(), x) != b.end()) return true;
    }
    return false;
}

std::uint64_t rule_hash(const GroundRuleView& r) {
    std::uint64_t h = 0x9ae16a3b2f90404full;
    for (auto part : {r.head, r.pos_body, r.neg_body}) {
        h = mix(h, part.size());
        for (LiteralId l : part) h = mix(h, l);
    }
    return h;
}

bool same_rule(const GroundRuleView& a, const GroundRuleView& b) {
    auto eq = [](std::span<const LiteralId> x, std::span<const LiteralId> y) {
        return std::equal(x.begin(), x.end(), y.begin(), y.end());
    };
    return eq(a.head, b.head) && eq(a.pos_body, b.pos_body) && eq(a.neg_body, b.neg_body);
}

/// Fact propagation and body simplification over the collected instances;
/// writes the surviving rules into `gp`.
void simplify_into(const RuleBuffer& buffer, const Instantiator& inst, GroundProgram& gp, GroundingStats& stats) {
    const std::size_t n_lits = gp.literal_count();
    const std::size_t n_rules = buffer.size();

    std::vector<std::uint32_t> occ_begin(n_lits + 1, 0);
    for (std::size_t r = 0; r < n_rules; ++r) {
        for (LiteralId l : buffer.pos(r)) ++occ_begin[l + 1];
    }
    for (std::size_t l = 0; l < n_lits; ++l) occ_begin[l + 1] += occ_begin[l];
    std::vector<std::uint32_t> occ(occ_begin.back());
    {
        std::vector<std::uint32_t> fill(occ_begin.begin(), occ_begin.end() - 1);
        for (std::size_t r = 0; r < n_rules; ++r) {
            for (LiteralId l : buffer.pos(r)) occ[fill[l]++] = static_cast<std::uint32_t>(r);
        }
    }

    std::vector<char> fact(n_lits, 0);
    std::vector<std::uint32_t> missing(n_rules);
    std::vector<LiteralId> queue;
    auto definite = [&](std::size_t r) {
        if (buffer.head(r).size() != 1) return false;
        for (LiteralId l : buffer.neg(r)) {
            if (inst.is_candidate(l)) return false;
        }
        return true;
    };
    auto derive = [&](LiteralId l) {
        if (!fact[l]) {
            fact[l] = 1;
            queue.push_back(l);
        }
    };
    for (std::size_t r = 0; r < n_rules; ++r) {
        missing[r] = static_cast<std::uint32_t>(buffer.pos(r).size());
        if (missing[r] == 0 && definite(r)) derive(buffer.head(r)[0]);
    }
    while (!queue.empty()) {
        const LiteralId l = queue.back();
        queue.pop_back();
        for (std::uint32_t k = occ_begin[l]; k < occ_begin[l + 1]; ++k) {
            const std::uint32_t r = occ[k];
            if (--missing[r] == 0 && definite(r)) derive(buffer.head(r)[0]);
        }
    }

    std::vector<char> fact_emitted(n_lits, 0);
    std::unordered_multimap<std::uint64_t, std::size_t> seen;
    std::vector<LiteralId> head_buf, pos, neg;
    for (std::size_t r = 0; r < n_rules; ++r) {
        auto head = buffer.head(r);
        bool blocked = false;
        neg.clear();
        for (LiteralId l : buffer.neg(r)) {
            if (fact[l]) {
                blocked = true;
                break;
            }
            if (inst.is_candidate(l) && !fact[complement(l)]) neg.push_back(l);
        }
        if (blocked) continue;
        pos.clear();
        for (LiteralId l : buffer.pos(r)) {
            if (fact[l]) continue;
            if (fact[complement(l)]) {
                blocked = true;
                break;
            }
            pos.push_back(l);
        }
        if (blocked) continue;
        const auto fact_head = std::find_if(head.begin(), head.end(), [&](LiteralId l) { return fact[l]; });
        if (fact_head != head.end()) {
            if (head.size() == 1 && pos.empty() && neg.empty() && !fact_emitted[head[0]]) {
                fact_emitted[head[0]] = 1;
                gp.add_rule(head, {}, {});
                ++stats.facts;
            }
            continue;
        }
        head_buf.assign(head.begin(), head.end());
        for (auto* part : {&head_buf, &pos, &neg}) {
            std::sort(part->begin(), part->end());
            part->erase(std::unique(part->begin(), part->end()), part->end());
        }
        const GroundRuleView view{head_buf, pos, neg};
        const std::uint64_t h = rule_hash(view);
        auto [lo, hi] = seen.equal_range(h);
        bool duplicate = false;
        for (auto it = lo; it != hi && !duplicate; ++it) duplicate = same_rule(gp.rule(it->second), view);
        if (!duplicate) seen.emplace(h, gp.add_rule(head_buf, pos, neg));
    }
    stats.emitted_rules = gp.rule_count();
}

} // namespace

std::vector<GroundRule> ground_rule(const Rule& rule, GroundProgram& target, std::span<const LiteralId> candidates,
                                    GroundingStats* stats) {
    check_safety(rule);
    GroundingStats local;
    GroundingStats& s = stats ? *stats : local;
    Instantiator inst(target, s);
    for (LiteralId l : candidates) inst.add_candidate(l);
    const Plan plan = make_plan(rule, std::nullopt, std::vector<Range>(rule.pos_body.size(), Range::Full));
    std::vector<GroundRule> out;
    inst.instantiate(rule, plan, [&](const GroundRule& g) {
        GroundRule copy = g;
        for (auto* part : {&copy.head, &copy.pos_body, &copy.neg_body}) {
            std::sort(part->begin(), part->end());
            part->erase(std::unique(part->begin(), part->end()), part->end());
        }
        if (std::find(out.begin(), out.end(), copy) == out.end()) out.push_back(std::move(copy));
    });
    return out;
}

GroundProgram ground_program(const Program& program, const GroundingOptions& options, GroundingStats* stats_out) {
    for (const Rule& rule : program.rules) check_safety(rule);
    const DependencyGraph graph = build_dependency_graph(program);

    GroundProgram gp(program.symbols, program.max_int);
    GroundingStats stats;
    Instantiator inst(gp, stats);
    RuleBuffer buffer;

    auto sink = [&](const GroundRule& g) {
        if (intersects(g.head, g.pos_body) || intersects(g.pos_body, g.neg_body)) return;
        buffer.add(g);
        if (options.max_rule_literals != 0 && buffer.literal_total() > options.max_rule_literals) {
            throw ResourceError("ground program exceeds the budget of " + std::to_string(options.max_rule_literals) +
                                " rule literals");
        }
        for (LiteralId h : g.head) inst.add_candidate(h);
    };

    std::vector<std::vector<std::size_t>> rules_of(graph.components.size());
    std::vector<std::size_t> constraints;
    for (std::size_t r = 0; r < program.rules.size(); ++r) {
        const Rule& rule = program.rules[r];
        if (rule.head.empty()) {
            constraints.push_back(r);
            continue;
        }
        std::size_t c = graph.component_of[rule.head.front().atom.predicate];
        for (const Literal& h : rule.head) c = std::min(c, graph.component_of[h.atom.predicate]);
        rules_of[c].push_back(r);
    }

    auto full_plan = [](const Rule& rule) {
        return make_plan(rule, std::nullopt, std::vector<Range>(rule.pos_body.size(), Range::Full));
    };

    for (std::size_t c = 0; c < graph.components.size(); ++c) {
        auto in_component = [&](const Literal& l) { return graph.component_of[l.atom.predicate] == c; };
        std::vector<std::size_t> exit_rules, recursive_rules;
        for (std::size_t r : rules_of[c]) {
            const auto& body = program.rules[r].pos_body;
            (std::any_of(body.begin(), body.end(), in_component) ? recursive_rules : exit_rules).push_back(r);
        }
        for (std::size_t r : exit_rules) inst.instantiate(program.rules[r], full_plan(program.rules[r]), sink);
        if (recursive_rules.empty()) continue;

        // one plan per (rule, body literal of this component) taking the delta
        std::vector<std::pair<std::size_t, Plan>> plans;
        for (std::size_t r : recursive_rules) {
            const Rule& rule = program.rules[r];
            for (std::size_t i = 0; i < rule.pos_body.size(); ++i) {
                if (!in_component(rule.pos_body[i])) continue;
                std::vector<Range> ranges(rule.pos_body.size(), Range::Full);
                for (std::size_t j = 0; j < rule.pos_body.size(); ++j) {
                    if (!in_component(rule.pos_body[j])) continue;
                    ranges[j] = j < i ? Range::Old : (j == i ? Range::Delta : Range::Current);
                }
                plans.emplace_back(r, make_plan(rule, i, std::move(ranges)));
            }
        }
        std::vector<Relation*> relations;
        for (PredicateId p : graph.components[c]) {
            relations.push_back(&inst.relation(p, false));
            relations.push_back(&inst.relation(p, true));
        }
        for (Relation* rel : relations) rel->old_end = rel->delta_end = 0;
        for (;;) {
            bool any_delta = false;
            // relation() may reallocate; refresh the pointers each round
            relations.clear();
            for (PredicateId p : graph.components[c]) {
                relations.push_back(&inst.relation(p, false));
                relations.push_back(&inst.relation(p, true));
            }
            for (Relation* rel : relations) {
                rel->old_end = rel->delta_end;
                rel->delta_end = rel->atoms.size();
                any_delta = any_delta || rel->delta_end > rel->old_end;
            }
            if (!any_delta) break;
            for (const auto& [r, plan] : plans) inst.instantiate(program.rules[r], plan, sink);
        }
    }
    for (std::size_t r : constraints) inst.instantiate(program.rules[r], full_plan(program.rules[r]), sink);

    simplify_into(buffer, inst, gp, stats);
    if (stats_out) *stats_out = stats;
    return gp;
}

} // namespace dlp
