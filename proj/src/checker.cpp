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

#include "dlp/checker.hpp"

#include <algorithm>

namespace dlp {

void PositiveGroundProgram::add_rule(std::span<const LiteralId> head, std::span<const LiteralId> body) {
    rules_.push_back({pool_.size(), static_cast<std::uint32_t>(head.size()), static_cast<std::uint32_t>(body.size())});
    pool_.insert(pool_.end(), head.begin(), head.end());
    pool_.insert(pool_.end(), body.begin(), body.end());
}

PositiveRuleView PositiveGroundProgram::rule(std::size_t i) const {
    const Record& r = rules_[i];
    return {{pool_.data() + r.begin, r.head_size}, {pool_.data() + r.begin + r.head_size, r.body_size}};
}

PositiveGroundProgram reduct(const GroundProgram& gp, const Interpretation& x) {
    PositiveGroundProgram out;
    for (std::size_t r = 0; r < gp.rule_count(); ++r) {
        const GroundRuleView rule = gp.rule(r);
        const bool blocked =
            std::any_of(rule.neg_body.begin(), rule.neg_body.end(), [&](LiteralId l) { return x.contains(l); });
        if (!blocked) out.add_rule(rule.head, rule.pos_body);
    }
    return out;
}

bool is_closed(const Interpretation& i, const PositiveGroundProgram& pp) {
    for (std::size_t r = 0; r < pp.rule_count(); ++r) {
        const PositiveRuleView rule = pp.rule(r);
        const bool body_in =
            std::all_of(rule.body.begin(), rule.body.end(), [&](LiteralId l) { return i.contains(l); });
        if (!body_in) continue;
        const bool head_hit =
            std::any_of(rule.head.begin(), rule.head.end(), [&](LiteralId l) { return i.contains(l); });
        if (!head_hit) return false;
    }
    return true;
}

namespace {

/// DPLL with two watched literals and chronological backtracking. Used to
/// look for a closed proper subset of a candidate: one variable per
/// literal of the candidate, one clause per applicable rule, plus a clause
/// demanding that some variable be false.
class SubsetSearch {
public:
    explicit SubsetSearch(std::size_t vars) : value_(vars, kUndef), watches_(2 * vars) {}

    // literal encoding: 2v is "v in the subset", 2v+1 is its negation
    void add_clause(std::vector<int>& lits) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t k = 1; k < lits.size(); ++k) {
            if ((lits[k] ^ 1) == lits[k - 1]) return; // tautology
        }
        if (lits.empty()) {
            unsat_ = true;
        } else if (lits.size() == 1) {
            units_.push_back(lits[0]);
        } else {
            const auto c = static_cast<std::uint32_t>(start_.size());
            start_.push_back(static_cast<std::uint32_t>(pool_.size()));
            pool_.insert(pool_.end(), lits.begin(), lits.end());
            watches_[lits[0]].push_back(c);
            watches_[lits[1]].push_back(c);
        }
    }

    bool solve() {
        start_.push_back(static_cast<std::uint32_t>(pool_.size()));
        if (unsat_) return false;
        for (int u : units_) {
            if (!enqueue(u)) return false;
        }
        if (!propagate()) return false;
        std::size_t next = 0;
        for (;;) {
            while (next < value_.size() && value_[next] != kUndef) ++next;
            if (next == value_.size()) return true;
            decisions_.push_back({trail_.size(), static_cast<int>(2 * next + 1), false});
            enqueue(decisions_.back().lit);
            while (!propagate()) {
                while (!decisions_.empty() && decisions_.back().flipped) decisions_.pop_back();
                if (decisions_.empty()) return false;
                Decision& d = decisions_.back();
                undo_to(d.trail_pos, next);
                d.flipped = true;
                d.lit ^= 1;
                enqueue(d.lit);
            }
        }
    }

    bool is_true(std::size_t var) const { return value_[var] == kTrue; }

private:
    static constexpr std::uint8_t kFalse = 0;
    static constexpr std::uint8_t kTrue = 1;
    static constexpr std::uint8_t kUndef = 2;

    struct Decision {
        std::size_t trail_pos;
        int lit;
        bool flipped;
    };

    std::uint8_t lit_value(int l) const {
        const std::uint8_t v = value_[static_cast<std::size_t>(l >> 1)];
        if (v == kUndef) return kUndef;
        return static_cast<std::uint8_t>(v ^ static_cast<std::uint8_t>(l & 1));
    }

    bool enqueue(int l) {
        const std::uint8_t v = lit_value(l);
        if (v != kUndef) return v == kTrue;
        value_[static_cast<std::size_t>(l >> 1)] = (l & 1) ? kFalse : kTrue;
        trail_.push_back(l);
        return true;
    }

    void undo_to(std::size_t pos, std::size_t& next) {
        while (trail_.size() > pos) {
            const auto var = static_cast<std::size_t>(trail_.back() >> 1);
            value_[var] = kUndef;
            next = std::min(next, var);
            trail_.pop_back();
        }
        qhead_ = std::min(qhead_, trail_.size());
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            const int false_lit = trail_[qhead_++] ^ 1;
            std::vector<std::uint32_t>& ws = watches_[static_cast<std::size_t>(false_lit)];
            std::size_t i = 0, j = 0;
            while (i < ws.size()) {
                const std::uint32_t c = ws[i++];
                int* cl = pool_.data() + start_[c];
                const std::size_t size = start_[c + 1] - start_[c];
                if (cl[0] == false_lit) std::swap(cl[0], cl[1]);
                if (lit_value(cl[0]) == kTrue) {
                    ws[j++] = c;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < size; ++k) {
                    if (lit_value(cl[k]) != kFalse) {
                        std::swap(cl[1], cl[k]);
                        watches_[static_cast<std::size_t>(cl[1])].push_back(c);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = c;
                if (lit_value(cl[0]) == kFalse) {
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead_ = trail_.size();
                    return false;
                }
                enqueue(cl[0]);
            }
            ws.resize(j);
        }
        return true;
    }

    std::vector<std::uint8_t> value_;
    std::vector<std::vector<std::uint32_t>> watches_;
    std::vector<int> pool_;
    std::vector<std::uint32_t> start_;
    std::vector<int> units_;
    std::vector<int> trail_;
    std::vector<Decision> decisions_;
    std::size_t qhead_ = 0;
    bool unsat_ = false;
};

/// Searches for a closed proper subset of `members`. `var_of(l)` returns the
/// variable of literal l, or -1 when l is not a member. `for_each_rule`
/// calls its argument with (head, body) of every positive rule.
template <class VarOf, class ForEachRule>
std::optional<Interpretation> search_smaller(std::span<const LiteralId> members, VarOf var_of,
                                             ForEachRule for_each_rule) {
    SubsetSearch search(members.size());
    std::vector<int> clause;
    for_each_rule([&](std::span<const LiteralId> head, std::span<const LiteralId> body) {
        clause.clear();
        for (LiteralId b : body) {
            const int v = var_of(b);
            if (v < 0) return; // rule body can never hold inside the candidate
            clause.push_back(2 * v + 1);
        }
        for (LiteralId h : head) {
            const int v = var_of(h);
            if (v >= 0) clause.push_back(2 * v);
        }
        search.add_clause(clause);
    });
    clause.clear();
    for (std::size_t v = 0; v < members.size(); ++v) clause.push_back(static_cast<int>(2 * v + 1));
    search.add_clause(clause);
    if (!search.solve()) return std::nullopt;
    std::vector<LiteralId> subset;
    for (std::size_t v = 0; v < members.size(); ++v) {
        if (search.is_true(v)) subset.push_back(members[v]);
    }
    return Interpretation(std::move(subset));
}

} // namespace

std::optional<Interpretation> find_smaller_model(const Interpretation& i, const PositiveGroundProgram& pp) {
    const auto members = i.literals();
    auto var_of = [&](LiteralId l) {
        auto it = std::lower_bound(members.begin(), members.end(), l);
        return (it != members.end() && *it == l) ? static_cast<int>(it - members.begin()) : -1;
    };
    return search_smaller(members, var_of, [&](auto&& visit) {
        for (std::size_t r = 0; r < pp.rule_count(); ++r) {
            const PositiveRuleView rule = pp.rule(r);
            visit(rule.head, rule.body);
        }
    });
}

bool is_minimal_model(const Interpretation& i, const PositiveGroundProgram& pp) {
    return !find_smaller_model(i, pp).has_value();
}

CheckResult AnswerSetChecker::check(const Interpretation& x) {
    CheckResult result;
    if (!x.is_consistent()) {
        result.failure = CheckFailure::Inconsistent;
        return result;
    }
    const auto members = x.literals();
    std::size_t needed = gp_.literal_count();
    if (!members.empty()) needed = std::max<std::size_t>(needed, members.back() + 1);
    if (member_.size() < needed) member_.resize(needed, 0);
    for (LiteralId l : members) member_[l] = 1;
    auto in_x = [&](LiteralId l) { return l < member_.size() && member_[l] != 0; };

    for (std::size_t r = 0; r < gp_.rule_count() && result.ok(); ++r) {
        const GroundRuleView rule = gp_.rule(r);
        if (std::any_of(rule.neg_body.begin(), rule.neg_body.end(), in_x)) continue;
        if (!std::all_of(rule.pos_body.begin(), rule.pos_body.end(), in_x)) continue;
        if (std::none_of(rule.head.begin(), rule.head.end(), in_x)) {
            result.failure = CheckFailure::NotClosed;
            result.violated_rule = r;
        }
    }
    if (result.ok()) {
        auto var_of = [&](LiteralId l) {
            if (!in_x(l)) return -1;
            auto it = std::lower_bound(members.begin(), members.end(), l);
            return static_cast<int>(it - members.begin());
        };
        auto smaller = search_smaller(members, var_of, [&](auto&& visit) {
            for (std::size_t r = 0; r < gp_.rule_count(); ++r) {
                const GroundRuleView rule = gp_.rule(r);
                if (std::any_of(rule.neg_body.begin(), rule.neg_body.end(), in_x)) continue;
                visit(rule.head, rule.pos_body);
            }
        });
        if (smaller) {
            result.failure = CheckFailure::NotMinimal;
            result.smaller_model = std::move(smaller);
        }
    }
    for (LiteralId l : members) member_[l] = 0;
    return result;
}

CheckResult check_answer_set(const GroundProgram& gp, const Interpretation& x) {
    AnswerSetChecker checker(gp);
    return checker.check(x);
}

bool is_answer_set(const GroundProgram& gp, const Interpretation& x) { return check_answer_set(gp, x).ok(); }

} // namespace dlp
