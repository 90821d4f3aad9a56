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

#include <doctest.h>

#include <random>

#include "dlp/checker.hpp"
#include "dlp/grounder.hpp"
#include "dlp/parser.hpp"
#include "support/naive.hpp"

using namespace dlp;

namespace {

struct Fixture {
    GroundProgram gp;
    LiteralId a, b, c;
    Fixture() : a(gp.literal("a")), b(gp.literal("b")), c(gp.literal("c")) {}
    Interpretation set(std::vector<LiteralId> lits) { return Interpretation(std::move(lits)); }
};

PositiveGroundProgram positive(std::initializer_list<std::pair<std::vector<LiteralId>, std::vector<LiteralId>>> rules) {
    PositiveGroundProgram pp;
    for (const auto& [h, b] : rules) pp.add_rule(h, b);
    return pp;
}

} // namespace

TEST_CASE("reduct") {
    Fixture f;
    f.gp.add_rule(std::vector{f.a}, {}, std::vector{f.b});
    SUBCASE("negative body absent from X: rule kept, negation stripped") {
        PositiveGroundProgram pp = reduct(f.gp, f.set({f.a}));
        REQUIRE(pp.rule_count() == 1);
        CHECK(pp.rule(0).head.size() == 1);
        CHECK(pp.rule(0).body.empty());
    }
    SUBCASE("negative body in X: rule deleted") { CHECK(reduct(f.gp, f.set({f.b})).rule_count() == 0); }
}

TEST_CASE("reduct of a positive program is the identity") {
    Fixture f;
    f.gp.add_rule(std::vector{f.a, f.b}, std::vector{f.c}, {});
    f.gp.add_rule(std::vector{f.c}, {}, {});
    for (const auto& x : {f.set({}), f.set({f.a}), f.set({f.a, f.b, f.c})}) {
        PositiveGroundProgram pp = reduct(f.gp, x);
        REQUIRE(pp.rule_count() == 2);
        for (std::size_t r = 0; r < 2; ++r) {
            CHECK(std::equal(pp.rule(r).head.begin(), pp.rule(r).head.end(), f.gp.rule(r).head.begin(),
                             f.gp.rule(r).head.end()));
            CHECK(std::equal(pp.rule(r).body.begin(), pp.rule(r).body.end(), f.gp.rule(r).pos_body.begin(),
                             f.gp.rule(r).pos_body.end()));
        }
    }
}

TEST_CASE("is_closed") {
    Fixture f;
    const auto disj = positive({{{f.a, f.b}, {}}});
    CHECK(is_closed(f.set({f.a}), disj));
    CHECK_FALSE(is_closed(f.set({}), disj));
    CHECK_FALSE(is_closed(f.set({f.a}), positive({{{f.b}, {f.a}}})));
}

TEST_CASE("is_minimal_model") {
    Fixture f;
    CHECK_FALSE(is_minimal_model(f.set({f.a, f.b}), positive({{{f.a, f.b}, {}}})));
    CHECK(is_minimal_model(f.set({f.a, f.b}), positive({{{f.a}, {}}, {{f.b}, {f.a}}})));
    auto smaller = find_smaller_model(f.set({f.a, f.b}), positive({{{f.a, f.b}, {}}}));
    REQUIRE(smaller.has_value());
    CHECK(smaller->size() == 1);
    CHECK(is_closed(*smaller, positive({{{f.a, f.b}, {}}})));
}

TEST_CASE("stratcomp reduct with a single product") {
    Program p = parse_program("strat(Y) v strat(Z) :- produced_by(X,Y,Z).\n"
                              "strat(W) :- controlled_by(W,X,Y,Z), strat(X), strat(Y), strat(Z).\n"
                              "produced_by(p1,c1,c2).\n");
    GroundProgram gp = ground_program(p);
    const LiteralId s1 = *gp.find_literal(parse_program("strat(c1).").rules[0].head[0]);
    const Interpretation x({s1});
    // every subset of {strat(c1)} other than itself is {} which is not closed
    const PositiveGroundProgram pp = reduct(gp, x);
    CHECK(is_minimal_model(x, pp));
    CHECK_FALSE(is_closed(Interpretation(), pp));
}

TEST_CASE("is_answer_set") {
    SUBCASE("disjunction") {
        Fixture f;
        f.gp.add_rule(std::vector{f.a, f.b}, {}, {});
        CHECK(is_answer_set(f.gp, f.set({f.a})));
        const CheckResult r = check_answer_set(f.gp, f.set({f.a, f.b}));
        CHECK(r.failure == CheckFailure::NotMinimal);
        CHECK(r.smaller_model.has_value());
    }
    SUBCASE("two-set program") {
        Fixture f;
        f.gp.add_rule(std::vector{f.a}, {}, std::vector{f.b});
        f.gp.add_rule(std::vector{f.b}, {}, std::vector{f.a});
        CHECK(is_answer_set(f.gp, f.set({f.a})));
        CHECK(is_answer_set(f.gp, f.set({f.b})));
        CHECK_FALSE(is_answer_set(f.gp, f.set({})));
    }
    SUBCASE("a :- not a has no answer set") {
        Fixture f;
        f.gp.add_rule(std::vector{f.a}, {}, std::vector{f.a});
        CHECK(check_answer_set(f.gp, f.set({f.a})).failure == CheckFailure::NotMinimal);
        const CheckResult empty = check_answer_set(f.gp, f.set({}));
        CHECK(empty.failure == CheckFailure::NotClosed);
        CHECK(empty.violated_rule == std::optional<std::size_t>(0));
    }
    SUBCASE("inconsistent sets are rejected first") {
        GroundProgram gp;
        const LiteralId a = gp.literal("a"), na = gp.literal("a", true);
        gp.add_rule(std::vector{a}, {}, {});
        gp.add_rule(std::vector{na}, {}, {});
        CHECK(check_answer_set(gp, Interpretation({a, na})).failure == CheckFailure::Inconsistent);
    }
}

TEST_CASE("checker agrees with the definition on random programs") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 300; ++round) {
        GroundProgram gp = naive::random_ground_program(rng);
        const auto expected = naive::answer_sets(gp);
        AnswerSetChecker checker(gp);
        // every subset of the head literals
        const auto lits = naive::head_literals(gp);
        naive::TextFamily got;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << lits.size()); ++m) {
            std::vector<LiteralId> x;
            for (std::size_t i = 0; i < lits.size(); ++i) {
                if ((m >> i) & 1) x.push_back(lits[i]);
            }
            const Interpretation interp(x);
            if (checker.check(interp).ok()) got.insert(naive::texts(gp, interp));
        }
        CHECK(got == expected);
    }
}

TEST_CASE("answer sets are incomparable") {
    std::mt19937_64 rng(22);
    for (int round = 0; round < 200; ++round) {
        GroundProgram gp = naive::random_ground_program(rng);
        const auto lits = naive::head_literals(gp);
        std::vector<Interpretation> found;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << lits.size()); ++m) {
            std::vector<LiteralId> x;
            for (std::size_t i = 0; i < lits.size(); ++i) {
                if ((m >> i) & 1) x.push_back(lits[i]);
            }
            if (is_answer_set(gp, Interpretation(x))) found.emplace_back(x);
        }
        for (const auto& x : found) {
            for (const auto& y : found) {
                if (x.is_subset_of(y)) CHECK(x == y);
            }
        }
    }
}
