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
#include <string>

#include "dlp/error.hpp"
#include "dlp/model.hpp"
#include "dlp/parser.hpp"

using namespace dlp;

TEST_CASE("disjunctive guess rule") {
    Program p = parse_program("inPath(X,Y) v outPath(X,Y) :- arc(X,Y).");
    REQUIRE(p.rules.size() == 1);
    const Rule& r = p.rules[0];
    CHECK(r.head.size() == 2);
    REQUIRE(r.pos_body.size() == 1);
    CHECK(to_string(r.pos_body[0], p.symbols, r.variables) == "arc(X,Y)");
    CHECK(r.neg_body.empty());
}

TEST_CASE("constraint with default negation") {
    Program p = parse_program(":- node(X), not reached(X).");
    const Rule& r = p.rules[0];
    CHECK(r.is_constraint());
    CHECK(r.pos_body.size() == 1);
    REQUIRE(r.neg_body.size() == 1);
    CHECK(to_string(r.neg_body[0], p.symbols, r.variables) == "reached(X)");
}

TEST_CASE("facts, comments and the bar disjunction") {
    Program p = parse_program("a. % a fact\n% whole line\nb | c.\n-d(1).");
    REQUIRE(p.rules.size() == 3);
    CHECK(p.rules[0].is_fact());
    CHECK(p.rules[1].head.size() == 2);
    CHECK(p.rules[2].head[0].strongly_negated);
}

TEST_CASE("rule spans point at the rule") {
    Program p = parse_program("a.\n\n  b :- a.", "f.lp");
    CHECK(p.rules[1].span.file == "f.lp");
    CHECK(p.rules[1].span.line == 3);
    CHECK(p.rules[1].span.column == 3);
}

TEST_CASE("built-ins") {
    Program p = parse_program("r(Z) :- q(X), Z = X + 1. s(Z) :- q(X), q(Y), Z = X * Y. t(X) :- q(X), X <> 2, X != 3, "
                              "X == X, X >= 0. u(Y) :- #int(X), #succ(X,Y).");
    REQUIRE(p.rules.size() == 4);
    CHECK(p.rules[0].builtins.at(0).kind == BuiltinKind::Plus);
    CHECK(p.rules[1].builtins.at(0).kind == BuiltinKind::Times);
    REQUIRE(p.rules[2].builtins.size() == 4);
    CHECK(p.rules[2].builtins[0].kind == BuiltinKind::NotEqual);
    CHECK(p.rules[2].builtins[1].kind == BuiltinKind::NotEqual);
    CHECK(p.rules[2].builtins[2].kind == BuiltinKind::Equal);
    CHECK(p.rules[2].builtins[3].kind == BuiltinKind::GreaterEq);
    CHECK(p.rules[3].builtins[0].kind == BuiltinKind::Int);
    CHECK(p.rules[3].builtins[1].kind == BuiltinKind::Succ);
    CHECK(to_string(p.rules[0], p.symbols) == "r(Z) :- q(X), Z = X + 1.");
}

TEST_CASE("anonymous variables are distinct") {
    Program p = parse_program(":- start(Y), inPath(_,Y), p(_).");
    const Rule& r = p.rules[0];
    REQUIRE(r.variables.size() == 3);
    CHECK(r.variables[1] == "_");
    CHECK(r.variables[2] == "_");
    CHECK(r.pos_body[1].atom.args[0] != r.pos_body[2].atom.args[0]);
}

TEST_CASE("queries") {
    SUBCASE("ground query in the stream") {
        Program p = parse_program("a v b.\nstrat(c)?");
        REQUIRE(p.query.has_value());
        CHECK(p.query->positive.size() == 1);
        CHECK(p.query->is_ground());
        CHECK(to_string(*p.query, p.symbols) == "strat(c)?");
    }
    SUBCASE("shared variable") {
        SymbolTable symbols;
        Query q = parse_query("p(X), q(X)?", symbols);
        CHECK(q.positive.size() == 2);
        REQUIRE(q.variables.size() == 1);
        CHECK(q.positive[0].atom.args[0] == q.positive[1].atom.args[0]);
    }
    SUBCASE("negated conjunct") {
        SymbolTable symbols;
        Query q = parse_query("p(X), not q(X)?", symbols);
        CHECK(q.negative.size() == 1);
    }
    SUBCASE("empty query") {
        SymbolTable symbols;
        CHECK_THROWS_AS(parse_query("?", symbols), ParseError);
    }
    SUBCASE("missing question mark") {
        SymbolTable symbols;
        CHECK_THROWS_AS(parse_query("p(a)", symbols), ParseError);
    }
    SUBCASE("two queries") { CHECK_THROWS_AS(parse_program("a? b?"), ParseError); }
}

TEST_CASE("literal sets") {
    SymbolTable symbols;
    auto lits = parse_literal_set("{a, -p(1,b)}", symbols);
    REQUIRE(lits.size() == 2);
    CHECK(lits[1].strongly_negated);
    CHECK(parse_literal_set("{}", symbols).empty());
    CHECK_THROWS_AS(parse_literal_set("{r(X)}", symbols), ParseError);
}

TEST_CASE("errors carry a span inside the offending lexeme") {
    auto span_of = [](const std::string& text) {
        try {
            parse_program(text, "t.lp");
        } catch (const ParseError& e) {
            return e.span();
        }
        FAIL("no error");
        return SourceSpan{};
    };
    CHECK(span_of("a :- b").line == 1);
    const SourceSpan s = span_of("a.\nb :- $c.");
    CHECK(s.line == 2);
    CHECK(s.column == 6);
    CHECK(s.file == "t.lp");
    CHECK_THROWS_AS(parse_program("p(a). p(a,b)."), ArityError);
    CHECK_THROWS_AS(parse_program("p(X) :- #int(X,Y)."), ParseError);
    CHECK_THROWS_AS(parse_program("X < Y :- p(X)."), ParseError);
    CHECK_THROWS_AS(parse_program("p(99999999999999999999)."), ParseError);
}

TEST_CASE("pretty-print round trip") {
    const char* atoms[] = {"p(X)", "q(X,Y)", "-p(a)", "r", "q(1,X)", "-s(Y,b)"};
    const char* tests[] = {"X < Y", "X != a", "Y = X + 1", "X >= 0"};
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
        std::string text;
        const int rules = 1 + static_cast<int>(rng() % 4);
        for (int r = 0; r < rules; ++r) {
            const int heads = static_cast<int>(rng() % 3);
            for (int h = 0; h < heads; ++h) text += std::string(h ? " v " : "") + atoms[rng() % 6];
            text += " :- p(X), q(X,Y)";
            if (rng() % 2) text += std::string(", not ") + atoms[rng() % 6];
            if (rng() % 2) text += std::string(", ") + tests[rng() % 4];
            text += ".\n";
        }
        const Program first = parse_program(text);
        const std::string once = to_string(first);
        const std::string twice = to_string(parse_program(once));
        CHECK(once == twice);
    }
}
