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

#include "dlp/solver.hpp"

#include <algorithm>

namespace dlp {

namespace {

constexpr std::uint8_t kFalse = static_cast<std::uint8_t>(TruthValue::False);
constexpr std::uint8_t kTrue = static_cast<std::uint8_t>(TruthValue::True);
constexpr std::uint8_t kUndef = static_cast<std::uint8_t>(TruthValue::Undefined);

void build_csr(std::size_t n, const std::vector<std::pair<LiteralId, std::uint32_t>>& pairs,
               std::vector<std::uint32_t>& begin, std::vector<std::uint32_t>& occ) {
    begin.assign(n + 1, 0);
    for (const auto& [l, r] : pairs) ++begin[l + 1];
    for (std::size_t i = 0; i < n; ++i) begin[i + 1] += begin[i];
    occ.resize(pairs.size());
    std::vector<std::uint32_t> fill(begin.begin(), begin.end() - 1);
    for (const auto& [l, r] : pairs) occ[fill[l]++] = r;
}

} // namespace

SolverState::SolverState(const GroundProgram& gp) : gp_(gp), value_(gp.literal_count(), kUndef) {
    const std::size_t n = gp.literal_count();
    const std::size_t m = gp.rule_count();
    std::vector<std::pair<LiteralId, std::uint32_t>> head, pos, neg;
    for (std::size_t r = 0; r < m; ++r) {
        const GroundRuleView rule = gp.rule(r);
        const auto id = static_cast<std::uint32_t>(r);
        for (LiteralId l : rule.head) head.emplace_back(l, id);
        for (LiteralId l : rule.pos_body) pos.emplace_back(l, id);
        for (LiteralId l : rule.neg_body) neg.emplace_back(l, id);
    }
    build_csr(n, head, head_begin_, head_occ_);
    build_csr(n, pos, pos_begin_, pos_occ_);
    build_csr(n, neg, neg_begin_, neg_occ_);
    body_true_.assign(m, 0);
    body_false_.assign(m, 0);
    head_true_.assign(m, 0);
    head_false_.assign(m, 0);
    head_xor_.assign(m, 0);
    support_.assign(n, 0);
    for (std::size_t r = 0; r < m; ++r) {
        for (LiteralId h : gp.rule(r).head) {
            if (supports(r, h)) ++support_[h];
        }
    }
}

bool SolverState::supports(std::size_t r, LiteralId h) const {
    if (body_false_[r] != 0) return false;
    if (head_true_[r] > 1 || (head_true_[r] == 1 && head_xor_[r] != h)) return false;
    const auto pos = gp_.rule(r).pos_body;
    return !std::binary_search(pos.begin(), pos.end(), h);
}

bool SolverState::assign(LiteralId l, TruthValue v) {
    const auto want = static_cast<std::uint8_t>(v);
    if (value_[l] == want) return true;
    if (value_[l] != kUndef) return false;
    value_[l] = want;
    trail_.push_back({l, v});
    return true;
}

void SolverState::change_rule(std::size_t r, int d_body_true, int d_body_false, int d_head_true, int d_head_false,
                              LiteralId head_lit) {
    const bool affects_support = d_body_false != 0 || d_head_true != 0;
    const auto head = gp_.rule(r).head;
    bool before[64];
    const std::size_t tracked = affects_support ? std::min<std::size_t>(head.size(), 64) : 0;
    for (std::size_t i = 0; i < tracked; ++i) before[i] = supports(r, head[i]);

    body_true_[r] += static_cast<std::uint32_t>(d_body_true);
    body_false_[r] += static_cast<std::uint32_t>(d_body_false);
    head_true_[r] += static_cast<std::uint32_t>(d_head_true);
    head_false_[r] += static_cast<std::uint32_t>(d_head_false);
    if (d_head_true != 0) head_xor_[r] ^= head_lit;

    const bool forward = d_body_true + d_body_false + d_head_true + d_head_false > 0;
    if (affects_support) {
        if (head.size() > 64) {
            // rare wide heads: recount from scratch
            for (LiteralId h : head) {
                std::uint32_t count = 0;
                for (std::uint32_t k = head_begin_[h]; k < head_begin_[h + 1]; ++k) {
                    if (supports(head_occ_[k], h)) ++count;
                }
                if (count != support_[h]) {
                    support_[h] = count;
                    if (forward) touched_lits_.push_back(h);
                }
            }
        } else {
            for (std::size_t i = 0; i < tracked; ++i) {
                const bool after = supports(r, head[i]);
                if (after == before[i]) continue;
                if (after) {
                    ++support_[head[i]];
                } else {
                    --support_[head[i]];
                }
                if (forward) touched_lits_.push_back(head[i]);
            }
        }
    }
    if (forward) touched_rules_.push_back(static_cast<std::uint32_t>(r));
}

void SolverState::apply(const TrailEntry& e, int d) {
    const LiteralId l = e.literal;
    const bool t = e.value == TruthValue::True;
    for (std::uint32_t k = head_begin_[l]; k < head_begin_[l + 1]; ++k) {
        change_rule(head_occ_[k], 0, 0, t ? d : 0, t ? 0 : d, l);
    }
    for (std::uint32_t k = pos_begin_[l]; k < pos_begin_[l + 1]; ++k) {
        change_rule(pos_occ_[k], t ? d : 0, t ? 0 : d, 0, 0, l);
    }
    for (std::uint32_t k = neg_begin_[l]; k < neg_begin_[l + 1]; ++k) {
        change_rule(neg_occ_[k], t ? 0 : d, t ? d : 0, 0, 0, l);
    }
}

bool SolverState::check_rule(std::size_t r) {
    if (body_false_[r] > 0 || head_true_[r] > 0) return true;
    const GroundRuleView rule = gp_.rule(r);
    const std::size_t body_size = rule.pos_body.size() + rule.neg_body.size();
    if (body_true_[r] == body_size) {
        // body holds: some head literal must be true
        std::optional<LiteralId> open;
        std::size_t open_count = 0;
        for (LiteralId h : rule.head) {
            if (value_[h] == kTrue) return true;
            if (value_[h] == kUndef) {
                open = h;
                ++open_count;
            }
        }
        if (open_count == 0) return false;
        if (open_count == 1) return assign(*open, TruthValue::True);
        return true;
    }
    if (head_false_[r] == rule.head.size() && body_true_[r] + 1 == body_size) {
        // heads all false: the single open body element must fail
        for (LiteralId h : rule.head) {
            if (value_[h] == kTrue) return true;
        }
        std::optional<std::pair<LiteralId, bool>> open;
        std::size_t open_count = 0;
        for (LiteralId p : rule.pos_body) {
            if (value_[p] == kFalse) return true;
            if (value_[p] == kUndef) {
                open = {p, true};
                ++open_count;
            }
        }
        for (LiteralId n : rule.neg_body) {
            if (value_[n] == kTrue) return true;
            if (value_[n] == kUndef) {
                open = {n, false};
                ++open_count;
            }
        }
        if (open_count == 0) return false;
        if (open_count == 1) return assign(open->first, open->second ? TruthValue::False : TruthValue::True);
    }
    return true;
}

bool SolverState::force_support(std::size_t r, LiteralId l) {
    const GroundRuleView rule = gp_.rule(r);
    for (LiteralId p : rule.pos_body) {
        if (!assign(p, TruthValue::True)) return false;
    }
    for (LiteralId n : rule.neg_body) {
        if (!assign(n, TruthValue::False)) return false;
    }
    for (LiteralId h : rule.head) {
        if (h != l && !assign(h, TruthValue::False)) return false;
    }
    return true;
}

bool SolverState::check_literal(LiteralId l) {
    if (value_[l] == kFalse) return true;
    if (support_[l] == 0) return assign(l, TruthValue::False);
    if (support_[l] == 1 && value_[l] == kTrue) {
        for (std::uint32_t k = head_begin_[l]; k < head_begin_[l + 1]; ++k) {
            if (supports(head_occ_[k], l)) return force_support(head_occ_[k], l);
        }
    }
    return true;
}

bool SolverState::propagate() {
    if (!initialized_) {
        initialized_ = true;
        for (std::size_t r = 0; r < gp_.rule_count(); ++r) {
            if (!check_rule(r)) return false;
        }
        for (LiteralId l = 0; l < value_.size(); ++l) {
            if (!check_literal(l)) return false;
        }
    }
    while (qhead_ < trail_.size()) {
        const TrailEntry e = trail_[qhead_++];
        touched_rules_.clear();
        touched_lits_.clear();
        apply(e, +1);
        if (e.value == TruthValue::True && !assign(complement(e.literal), TruthValue::False)) return false;
        for (std::uint32_t r : touched_rules_) {
            if (!check_rule(r)) return false;
        }
        if (!check_literal(e.literal)) return false;
        for (LiteralId l : touched_lits_) {
            if (!check_literal(l)) return false;
        }
    }
    return true;
}

void SolverState::undo_to(std::size_t pos) {
    while (trail_.size() > pos) {
        const std::size_t idx = trail_.size() - 1;
        if (idx < qhead_) apply(trail_[idx], -1);
        value_[trail_[idx].literal] = kUndef;
        trail_.pop_back();
    }
    qhead_ = std::min(qhead_, trail_.size());
}

std::optional<LiteralId> SolverState::choose_branch() const {
    // score_[l] = 1 + body occurrences for marked literals, 0 otherwise
    score_.assign(value_.size(), 0);
    std::optional<LiteralId> best;
    auto better = [&](LiteralId l) {
        return !best || score_[l] > score_[*best] || (score_[l] == score_[*best] && l < *best);
    };
    for (std::size_t r = 0; r < gp_.rule_count(); ++r) {
        if (rule_satisfied(r)) continue;
        const GroundRuleView rule = gp_.rule(r);
        for (LiteralId h : rule.head) {
            if (value_[h] == kUndef && score_[h] == 0) score_[h] = 1;
        }
        for (LiteralId p : rule.pos_body) {
            if (value_[p] == kUndef) score_[p] += score_[p] == 0 ? 2 : 1;
        }
        for (LiteralId n : rule.neg_body) {
            if (value_[n] == kUndef) score_[n] += score_[n] == 0 ? 2 : 1;
        }
    }
    for (LiteralId l = 0; l < score_.size(); ++l) {
        if (score_[l] != 0 && better(l)) best = l;
    }
    return best;
}

Interpretation SolverState::true_literals() const {
    std::vector<LiteralId> out;
    for (LiteralId l = 0; l < value_.size(); ++l) {
        if (value_[l] == kTrue) out.push_back(l);
    }
    return Interpretation(std::move(out));
}

ModelGenerator::ModelGenerator(const GroundProgram& gp) : state_(gp), checker_(gp) {}

bool ModelGenerator::backtrack() {
    while (!decisions_.empty() && decisions_.back().flipped) decisions_.pop_back();
    if (decisions_.empty()) return false;
    ++stats_.backtracks;
    Decision& d = decisions_.back();
    state_.undo_to(d.trail_pos);
    d.flipped = true;
    state_.assign(d.literal, TruthValue::False);
    return true;
}

std::optional<Interpretation> ModelGenerator::next() {
    if (done_) return std::nullopt;
    if (started_ && !backtrack()) {
        done_ = true;
        return std::nullopt;
    }
    started_ = true;
    for (;;) {
        if (!state_.propagate()) {
            if (!backtrack()) break;
            continue;
        }
        if (auto branch = state_.choose_branch()) {
            ++stats_.choices;
            decisions_.push_back({state_.trail().size(), *branch, false});
            state_.assign(*branch, TruthValue::True);
            continue;
        }
        // no open rule left: everything still undefined is false
        for (LiteralId l = 0; l < state_.literal_count(); ++l) {
            if (state_.value(l) == TruthValue::Undefined) state_.assign(l, TruthValue::False);
        }
        if (!state_.propagate()) {
            if (!backtrack()) break;
            continue;
        }
        ++stats_.candidates;
        Interpretation candidate = state_.true_literals();
        if (checker_.check(candidate).ok()) {
            ++stats_.answer_sets;
            return candidate;
        }
        ++stats_.rejected;
        if (!backtrack()) break;
    }
    done_ = true;
    return std::nullopt;
}

std::vector<Interpretation> enumerate_answer_sets(const GroundProgram& gp, EnumerationLimit limit,
                                                  SolverStats* stats) {
    ModelGenerator generator(gp);
    std::vector<Interpretation> out;
    while (limit.max_answer_sets == 0 || out.size() < limit.max_answer_sets) {
        auto next = generator.next();
        if (!next) break;
        out.push_back(std::move(*next));
    }
    if (stats) *stats = generator.stats();
    return out;
}

} // namespace dlp
