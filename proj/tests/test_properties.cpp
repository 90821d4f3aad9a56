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

// Invariants that hold for every program, checked on random inputs. Each
// suite runs at least 200 cases.

#include <doctest.h>

#include <algorithm>
#include <random>

#include "dlp/checker.hpp"
#include "dlp/frontends.hpp"
#include "dlp/grounder.hpp"
#include "dlp/parser.hpp"
#include "dlp/solver.hpp"
#include "support/naive.hpp"
#include "support/random_program.hpp"

using namespace dlp;

namespace {

constexpr int kCases = 250;

naive::TextFamily solve_texts(const GroundProgram& gp) {
    naive::TextFamily out;
    for (const Interpretation& x : enumerate_answer_sets(gp)) out.insert(naive::texts(gp, x));
    return out;
}

// Rule r holds in x read as a classical interpretation with `not` as absence.
bool satisfied(const GroundRuleView& r, const Interpretation& x) {
    for (auto l : r.pos_body) {
        if (!x.contains(l)) return true;
    }
    for (auto l : r.neg_body) {
        if (x.contains(l)) return true;
    }
    return std::any_of(r.head.begin(), r.head.end(), [&](LiteralId l) { return x.contains(l); });
}

GroundProgram copy_with_constraint(const GroundProgram& gp, std::mt19937_64& rng) {
    GroundProgram out = gp;
    std::vector<LiteralId> pos, neg;
    const std::size_t n = gp.literal_count();
    if (n == 0) return out;
    for (int k = 0, m = 1 + static_cast<int>(rng() % 2); k < m; ++k) pos.push_back(static_cast<LiteralId>(rng() % n));
    if (rng() % 2) neg.push_back(static_cast<LiteralId>(rng() % n));
    out.add_rule({}, pos, neg);
    return out;
}

} // namespace

TEST_CASE("answer sets form an antichain") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < kCases; ++i) {
        const GroundProgram gp = naive::random_ground_program(rng);
        const auto sets = enumerate_answer_sets(gp);
        for (std::size_t a = 0; a < sets.size(); ++a) {
            for (std::size_t b = 0; b < sets.size(); ++b) {
                if (a != b) CHECK_FALSE(sets[a].is_subset_of(sets[b]));
            }
        }
    }
}

TEST_CASE("answer sets are consistent models of the program") {
    std::mt19937_64 rng(102);
    for (int i = 0; i < kCases; ++i) {
        const GroundProgram gp = naive::random_ground_program(rng);
        for (const Interpretation& x : enumerate_answer_sets(gp)) {
            CHECK(x.is_consistent());
            for (std::size_t r = 0; r < gp.rule_count(); ++r) CHECK(satisfied(gp.rule(r), x));
        }
    }
}

TEST_CASE("answer sets are minimal models of their reduct") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < kCases; ++i) {
        const GroundProgram gp = naive::random_ground_program(rng);
        for (const Interpretation& x : enumerate_answer_sets(gp)) {
            // Test-side reduct: drop rules blocked by x, strip `not`.
            std::vector<std::pair<std::vector<LiteralId>, std::vector<LiteralId>>> reduct;
            for (std::size_t r = 0; r < gp.rule_count(); ++r) {
                const auto rule = gp.rule(r);
                if (std::any_of(rule.neg_body.begin(), rule.neg_body.end(), [&](LiteralId l) { return x.contains(l); }))
                    continue;
                reduct.emplace_back(std::vector(rule.head.begin(), rule.head.end()),
                                    std::vector(rule.pos_body.begin(), rule.pos_body.end()));
            }
            auto closed = [&](const std::vector<LiteralId>& y) {
                auto in = [&](LiteralId l) { return std::find(y.begin(), y.end(), l) != y.end(); };
                for (const auto& [h, b] : reduct) {
                    if (std::all_of(b.begin(), b.end(), in) && std::none_of(h.begin(), h.end(), in)) return false;
                }
                return true;
            };
            const std::vector<LiteralId> xs(x.begin(), x.end());
            CHECK(closed(xs));
            REQUIRE(xs.size() < 20);
            for (std::uint32_t mask = 0; mask + 1 < (1u << xs.size()); ++mask) {
                std::vector<LiteralId> y;
                for (std::size_t k = 0; k < xs.size(); ++k) {
                    if (mask >> k & 1) y.push_back(xs[k]);
                }
                CHECK_FALSE(closed(y));
            }
        }
    }
}

TEST_CASE("adding a constraint filters the answer sets") {
    std::mt19937_64 rng(104);
    for (int i = 0; i < kCases; ++i) {
        const GroundProgram gp = naive::random_ground_program(rng);
        const GroundProgram constrained = copy_with_constraint(gp, rng);
        const auto c = constrained.rule(constrained.rule_count() - 1);
        std::vector<Interpretation> expected;
        for (const Interpretation& x : enumerate_answer_sets(gp)) {
            if (satisfied(c, x)) expected.push_back(x);
        }
        auto got = enumerate_answer_sets(constrained);
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        CHECK(got == expected);
    }
}

TEST_CASE("grounding preserves answer sets") {
    std::mt19937_64 rng(105);
    int compared_brute = 0;
    for (int i = 0; i < kCases; ++i) {
        naive::RandomTextSpec spec;
        spec.constants = 2 + i % 3;
        const std::string text = naive::random_program_text(rng, spec);
        CAPTURE(text);
        const Program p = parse_program(text);
        const GroundProgram smart = ground_program(p);
        const GroundProgram full = naive::ground(p);
        const naive::TextFamily got = solve_texts(smart);
        CHECK(got == solve_texts(full));
        if (naive::head_literals(full).size() <= 16) {
            CHECK(got == naive::answer_sets(full));
            ++compared_brute;
        }
    }
    CHECK(compared_brute > 50);
}

namespace {

// Query evaluation by enumeration over the universe, on literal texts.
struct TextQuery {
    // conjunct: sign, predicate, argument slots (variable index or -1 - constant index)
    struct Conjunct {
        bool negated;
        std::string predicate;
        std::vector<int> slots;
    };
    std::vector<Conjunct> conjuncts;
    std::size_t named = 0, anonymous = 0;
    std::string text;
};

TextQuery random_query(std::mt19937_64& rng) {
    static const char* const names[] = {"X", "Y"};
    TextQuery q;
    q.named = rng() % 3;
    const std::size_t n = 1 + rng() % 2;
    bool has_anon = false;
    for (std::size_t k = 0; k < n; ++k) {
        TextQuery::Conjunct c;
        c.negated = k > 0 && rng() % 2;
        const std::size_t arity = 1 + rng() % 2;
        c.predicate = arity == 2 ? "q" : (rng() % 2 ? "p" : "r");
        std::string t = std::string(c.negated ? "not " : "") + c.predicate + "(";
        for (std::size_t a = 0; a < arity; ++a) {
            int slot;
            std::string s;
            const auto roll = rng() % 4;
            if (q.named > 0 && roll < 2) {
                slot = static_cast<int>(rng() % q.named);
                s = names[slot];
            } else if (roll == 2 && !c.negated) {
                slot = 100; // anonymous
                s = "_";
                has_anon = true;
            } else {
                slot = -1 - static_cast<int>(rng() % 2);
                s = slot == -1 ? "a" : "b";
            }
            c.slots.push_back(slot);
            t += (a ? "," : "") + s;
        }
        q.text += (k ? ", " : "") + t + ")";
        q.conjuncts.push_back(c);
    }
    (void)has_anon;
    q.text += "?";
    return q;
}

// Named variables actually occurring in the query text, in first-occurrence order.
std::vector<int> occurring(const TextQuery& q) {
    std::vector<int> out;
    for (const auto& c : q.conjuncts) {
        for (int s : c.slots) {
            if (s >= 0 && s < 100 && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        }
    }
    return out;
}

std::set<std::vector<std::string>> substitutions(const TextQuery& q, const naive::TextSet& x,
                                                 const std::vector<std::string>& universe) {
    const std::vector<int> vars = occurring(q);
    std::set<std::vector<std::string>> out;
    if (universe.empty() && !vars.empty()) return out;
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
        std::vector<std::string> value(2);
        for (std::size_t v = 0; v < vars.size(); ++v) value[vars[v]] = universe[idx[v]];
        bool all = true;
        for (const auto& c : q.conjuncts) {
            // anonymous slots: exists over the universe
            std::vector<std::size_t> anon;
            for (std::size_t a = 0; a < c.slots.size(); ++a) {
                if (c.slots[a] == 100) anon.push_back(a);
            }
            bool holds = false;
            std::vector<std::size_t> ai(anon.size(), 0);
            if (!anon.empty() && universe.empty()) {
                holds = false;
            } else {
                for (;;) {
                    std::string t = c.predicate + "(";
                    std::size_t an = 0;
                    for (std::size_t a = 0; a < c.slots.size(); ++a) {
                        const int s = c.slots[a];
                        t += a ? "," : "";
                        t += s == 100 ? universe[ai[an++]] : s >= 0 ? value[s] : (s == -1 ? "a" : "b");
                    }
                    t += ")";
                    if (x.count(t)) holds = true;
                    std::size_t k = 0;
                    while (k < ai.size() && ++ai[k] == universe.size()) ai[k++] = 0;
                    if (k == ai.size() || holds) break;
                }
            }
            if (holds == c.negated) {
                all = false;
                break;
            }
        }
        if (all) {
            std::vector<std::string> s;
            for (int v : vars) s.push_back(value[v]);
            out.insert(s);
        }
        std::size_t v = 0;
        while (v < idx.size() && ++idx[v] == universe.size()) idx[v++] = 0;
        if (v == idx.size()) break;
    }
    return out;
}

} // namespace

TEST_CASE("brave is the union and cautious the intersection over answer sets") {
    std::mt19937_64 rng(106);
    for (int i = 0; i < kCases; ++i) {
        naive::RandomTextSpec spec;
        spec.constants = 2;
        spec.strong_negation = false;
        const TextQuery tq = random_query(rng);
        const std::string text = naive::random_program_text(rng, spec) + "p(a) v r(b).\n" + tq.text + "\n";
        CAPTURE(text);
        Program p = parse_program(text);
        const GroundProgram gp = ground_program(p);
        std::vector<std::string> universe;
        for (Constant c : herbrand_universe(p)) universe.push_back(to_string(Term::constant(c), p.symbols));

        std::set<std::vector<std::string>> uni, inter;
        bool first = true;
        std::size_t count = 0;
        for (const Interpretation& x : enumerate_answer_sets(gp)) {
            const auto s = substitutions(tq, naive::texts(gp, x), universe);
            uni.insert(s.begin(), s.end());
            if (first) inter = s;
            else {
                std::set<std::vector<std::string>> keep;
                std::set_intersection(inter.begin(), inter.end(), s.begin(), s.end(),
                                      std::inserter(keep, keep.end()));
                inter = keep;
            }
            first = false;
            ++count;
        }
        auto as_text = [&](const QueryAnswer& a) {
            std::set<std::vector<std::string>> out;
            for (const Substitution& s : a.substitutions) {
                std::vector<std::string> row;
                for (Constant c : s) row.push_back(to_string(Term::constant(c), p.symbols));
                out.insert(row);
            }
            return out;
        };
        const QueryAnswer b = brave(p, *p.query, {false});
        const QueryAnswer c = cautious(p, *p.query, {false});
        if (occurring(tq).empty()) {
            CHECK(b.result == !uni.empty());
            CHECK(c.result == (count == 0 || !inter.empty()));
        } else {
            CHECK(as_text(b) == uni);
            if (count > 0) CHECK(as_text(c) == inter);
            else CHECK(c.result);
        }
        CHECK(b.no_answer_sets == (count == 0));
    }
}
