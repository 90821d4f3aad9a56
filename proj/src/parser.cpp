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

#include "dlp/parser.hpp"

#include <cctype>
#include <charconv>
#include <unordered_map>
#include <variant>

namespace dlp {

namespace {

enum class Tok {
    Ident,     // [a-z][A-Za-z0-9_]*
    Variable,  // [A-Z_][A-Za-z0-9_]*
    Integer,   // [0-9]+
    String,    // "..."
    Directive, // #int, #succ
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    If,        // :-
    Question,
    Bar,
    Minus,
    Plus,
    Star,
    Less,
    LessEq,
    Greater,
    GreaterEq,
    Equal,
    NotEqual,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string_view text;
    SourceSpan span;
};

/// Turns a sequence of sources into one token stream.
class Lexer {
public:
    explicit Lexer(std::span<const Source> sources) : sources_(sources) { start_source(); }

    Token next() {
        for (;;) {
            skip_blank();
            if (source_ < sources_.size() && pos_ >= text().size()) {
                ++source_;
                start_source();
                continue;
            }
            break;
        }
        Token tok;
        tok.span = here();
        if (source_ >= sources_.size()) return tok;

        const std::string_view s = text();
        const std::size_t begin = pos_;
        const char c = s[pos_];
        auto ident_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };

        if (std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < s.size() && ident_char(s[pos_])) advance();
            tok.kind = std::islower(static_cast<unsigned char>(c)) ? Tok::Ident : Tok::Variable;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < s.size() && std::isdigit(static_cast<unsigned char>(s[pos_]))) advance();
            tok.kind = Tok::Integer;
        } else if (c == '"') {
            advance();
            while (pos_ < s.size() && s[pos_] != '"' && s[pos_] != '\n') advance();
            if (pos_ >= s.size() || s[pos_] != '"') throw ParseError(tok.span, "unterminated string constant");
            advance();
            tok.kind = Tok::String;
        } else if (c == '#') {
            advance();
            while (pos_ < s.size() && ident_char(s[pos_])) advance();
            tok.kind = Tok::Directive;
        } else {
            auto two = [&](char next) { return pos_ + 1 < s.size() && s[pos_ + 1] == next; };
            std::size_t len = 1;
            switch (c) {
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            case '{': tok.kind = Tok::LBrace; break;
            case '}': tok.kind = Tok::RBrace; break;
            case ',': tok.kind = Tok::Comma; break;
            case '.': tok.kind = Tok::Dot; break;
            case '?': tok.kind = Tok::Question; break;
            case '|': tok.kind = Tok::Bar; break;
            case '-': tok.kind = Tok::Minus; break;
            case '+': tok.kind = Tok::Plus; break;
            case '*': tok.kind = Tok::Star; break;
            case ':':
                if (!two('-')) throw ParseError(tok.span, "unexpected ':'");
                tok.kind = Tok::If;
                len = 2;
                break;
            case '<':
                if (two('=')) {
                    tok.kind = Tok::LessEq;
                    len = 2;
                } else if (two('>')) {
                    tok.kind = Tok::NotEqual;
                    len = 2;
                } else {
                    tok.kind = Tok::Less;
                }
                break;
            case '>':
                tok.kind = two('=') ? Tok::GreaterEq : Tok::Greater;
                len = two('=') ? 2 : 1;
                break;
            case '=':
                tok.kind = Tok::Equal;
                len = two('=') ? 2 : 1;
                break;
            case '!':
                if (!two('=')) throw ParseError(tok.span, "unexpected '!'");
                tok.kind = Tok::NotEqual;
                len = 2;
                break;
            default: throw ParseError(tok.span, std::string("unexpected character '") + c + "'");
            }
            for (std::size_t i = 0; i < len; ++i) advance();
        }
        tok.text = s.substr(begin, pos_ - begin);
        return tok;
    }

private:
    std::string_view text() const { return sources_[source_].text; }

    void start_source() {
        pos_ = 0;
        line_ = 1;
        column_ = 1;
    }

    SourceSpan here() const {
        if (source_ >= sources_.size()) {
            std::string file = sources_.empty() ? std::string() : sources_.back().name;
            return {file, line_, column_};
        }
        return {sources_[source_].name, line_, column_};
    }

    void advance() {
        if (text()[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_blank() {
        if (source_ >= sources_.size()) return;
        const std::string_view s = text();
        while (pos_ < s.size()) {
            if (std::isspace(static_cast<unsigned char>(s[pos_]))) {
                advance();
            } else if (s[pos_] == '%') {
                while (pos_ < s.size() && s[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::span<const Source> sources_;
    std::size_t source_ = 0;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

struct NegatedLiteral {
    Literal literal;
};

using BodyElement = std::variant<Literal, NegatedLiteral, BuiltinAtom>;

class Parser {
public:
    Parser(std::span<const Source> sources, SymbolTable& symbols) : lexer_(sources), symbols_(symbols) {
        shift();
    }

    void parse_program(Program& program) {
        while (tok_.kind != Tok::End) {
            SourceSpan start = tok_.span;
            variables_.clear();
            var_ids_.clear();
            if (tok_.kind == Tok::If) {
                shift();
                Rule rule;
                rule.span = start;
                parse_body(rule);
                expect(Tok::Dot, "'.'");
                rule.variables = std::move(variables_);
                program.rules.push_back(std::move(rule));
                continue;
            }
            SourceSpan first_span = tok_.span;
            BodyElement first = parse_element();
            if (tok_.kind == Tok::Bar || is_disjunction_keyword()) {
                Rule rule;
                rule.span = start;
                rule.head.push_back(require_literal(std::move(first), first_span));
                while (tok_.kind == Tok::Bar || is_disjunction_keyword()) {
                    shift();
                    SourceSpan span = tok_.span;
                    rule.head.push_back(require_literal(parse_element(), span));
                }
                finish_rule(rule, program);
            } else if (tok_.kind == Tok::Dot || tok_.kind == Tok::If) {
                Rule rule;
                rule.span = start;
                rule.head.push_back(require_literal(std::move(first), first_span));
                finish_rule(rule, program);
            } else if (tok_.kind == Tok::Comma || tok_.kind == Tok::Question) {
                Query query;
                query.span = start;
                add_to_query(query, std::move(first), first_span);
                while (tok_.kind == Tok::Comma) {
                    shift();
                    SourceSpan span = tok_.span;
                    add_to_query(query, parse_element(), span);
                }
                if (tok_.kind != Tok::Question) fail("expected '?' to end the query");
                shift();
                if (program.query) throw ParseError(start, "at most one query is allowed");
                query.variables = std::move(variables_);
                program.query = std::move(query);
            } else {
                fail("expected 'v', ':-', '.', ',' or '?'");
            }
        }
    }

    Query parse_standalone_query() {
        Query query;
        query.span = tok_.span;
        if (tok_.kind == Tok::Question) fail("empty query");
        for (;;) {
            SourceSpan span = tok_.span;
            add_to_query(query, parse_element(), span);
            if (tok_.kind != Tok::Comma) break;
            shift();
        }
        expect(Tok::Question, "'?'");
        if (tok_.kind != Tok::End) fail("unexpected input after query");
        query.variables = std::move(variables_);
        return query;
    }

    std::vector<Literal> parse_set() {
        expect(Tok::LBrace, "'{'");
        std::vector<Literal> out;
        if (tok_.kind != Tok::RBrace) {
            for (;;) {
                SourceSpan span = tok_.span;
                Literal l = parse_literal();
                if (!l.atom.is_ground()) throw ParseError(span, "literal set must be ground");
                out.push_back(std::move(l));
                if (tok_.kind != Tok::Comma) break;
                shift();
            }
        }
        expect(Tok::RBrace, "'}'");
        if (tok_.kind != Tok::End) fail("unexpected input after literal set");
        return out;
    }

private:
    void shift() { tok_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& message) const {
        std::string got = tok_.kind == Tok::End ? "end of input" : "'" + std::string(tok_.text) + "'";
        throw ParseError(tok_.span, message + ", got " + got);
    }

    void expect(Tok kind, const char* what) {
        if (tok_.kind != kind) fail(std::string("expected ") + what);
        shift();
    }

    bool is_disjunction_keyword() const { return tok_.kind == Tok::Ident && tok_.text == "v"; }

    void finish_rule(Rule& rule, Program& program) {
        if (tok_.kind == Tok::If) {
            shift();
            parse_body(rule);
        }
        expect(Tok::Dot, "'.'");
        rule.variables = std::move(variables_);
        program.rules.push_back(std::move(rule));
    }

    void parse_body(Rule& rule) {
        for (;;) {
            BodyElement e = parse_element();
            if (auto* l = std::get_if<Literal>(&e)) {
                rule.pos_body.push_back(std::move(*l));
            } else if (auto* n = std::get_if<NegatedLiteral>(&e)) {
                rule.neg_body.push_back(std::move(n->literal));
            } else {
                rule.builtins.push_back(std::get<BuiltinAtom>(std::move(e)));
            }
            if (tok_.kind != Tok::Comma) break;
            shift();
        }
    }

    Literal require_literal(BodyElement e, const SourceSpan& span) {
        if (auto* l = std::get_if<Literal>(&e)) return std::move(*l);
        throw ParseError(span, "only classical literals may appear in a rule head");
    }

    void add_to_query(Query& query, BodyElement e, const SourceSpan& span) {
        if (auto* l = std::get_if<Literal>(&e)) {
            query.positive.push_back(std::move(*l));
        } else if (auto* n = std::get_if<NegatedLiteral>(&e)) {
            query.negative.push_back(std::move(n->literal));
        } else {
            throw ParseError(span, "built-ins are not supported in queries");
        }
    }

    BodyElement parse_element() {
        if (tok_.kind == Tok::Ident && tok_.text == "not") {
            shift();
            if (tok_.kind != Tok::Ident && tok_.kind != Tok::Minus) fail("expected a literal after 'not'");
            return NegatedLiteral{parse_literal()};
        }
        if (tok_.kind == Tok::Minus) return parse_literal();
        if (tok_.kind == Tok::Directive) return parse_directive();
        if (tok_.kind == Tok::Ident) {
            Token name = tok_;
            shift();
            if (tok_.kind == Tok::LParen || !is_relation(tok_.kind)) return parse_atom_rest(name, false);
            return parse_builtin_rest(Term::constant(Constant::symbol(symbols_.intern_symbol(name.text))));
        }
        if (tok_.kind == Tok::Variable || tok_.kind == Tok::Integer || tok_.kind == Tok::String) {
            Term left = parse_term();
            return parse_builtin_rest(left);
        }
        fail("expected a literal or built-in");
    }

    static bool is_relation(Tok kind) {
        switch (kind) {
        case Tok::Less:
        case Tok::LessEq:
        case Tok::Greater:
        case Tok::GreaterEq:
        case Tok::Equal:
        case Tok::NotEqual: return true;
        default: return false;
        }
    }

    BuiltinAtom parse_builtin_rest(Term left) {
        if (!is_relation(tok_.kind)) fail("expected a comparison operator");
        Tok op = tok_.kind;
        shift();
        Term right = parse_term();
        if (op == Tok::Equal && (tok_.kind == Tok::Plus || tok_.kind == Tok::Star)) {
            BuiltinKind kind = tok_.kind == Tok::Plus ? BuiltinKind::Plus : BuiltinKind::Times;
            shift();
            Term operand = parse_term();
            return {kind, {right, operand, left}};
        }
        BuiltinKind kind = BuiltinKind::Equal;
        switch (op) {
        case Tok::Less: kind = BuiltinKind::Less; break;
        case Tok::LessEq: kind = BuiltinKind::LessEq; break;
        case Tok::Greater: kind = BuiltinKind::Greater; break;
        case Tok::GreaterEq: kind = BuiltinKind::GreaterEq; break;
        case Tok::NotEqual: kind = BuiltinKind::NotEqual; break;
        default: break;
        }
        return {kind, {left, right}};
    }

    BuiltinAtom parse_directive() {
        SourceSpan span = tok_.span;
        BuiltinKind kind;
        if (tok_.text == "#int") {
            kind = BuiltinKind::Int;
        } else if (tok_.text == "#succ") {
            kind = BuiltinKind::Succ;
        } else {
            throw ParseError(span, "unknown built-in " + std::string(tok_.text));
        }
        shift();
        BuiltinAtom b{kind, parse_arguments()};
        if (b.args.size() != builtin_arity(kind)) {
            throw ParseError(span, "built-in expects " + std::to_string(builtin_arity(kind)) + " argument(s)");
        }
        return b;
    }

    Literal parse_literal() {
        bool negated = false;
        if (tok_.kind == Tok::Minus) {
            negated = true;
            shift();
        }
        if (tok_.kind != Tok::Ident || tok_.text == "not") fail("expected a predicate name");
        Token name = tok_;
        shift();
        return parse_atom_rest(name, negated);
    }

    Literal parse_atom_rest(const Token& name, bool negated) {
        std::vector<Term> args;
        if (tok_.kind == Tok::LParen) args = parse_arguments();
        PredicateId p = symbols_.intern_predicate(name.text, args.size(), name.span);
        return {{p, std::move(args)}, negated};
    }

    std::vector<Term> parse_arguments() {
        expect(Tok::LParen, "'('");
        std::vector<Term> args;
        for (;;) {
            args.push_back(parse_term());
            if (tok_.kind != Tok::Comma) break;
            shift();
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    Term parse_term() {
        Token t = tok_;
        switch (t.kind) {
        case Tok::Variable: {
            shift();
            if (t.text == "_") {
                variables_.emplace_back("_");
                return Term::variable(static_cast<VarIndex>(variables_.size() - 1));
            }
            auto [it, inserted] = var_ids_.try_emplace(std::string(t.text), static_cast<VarIndex>(variables_.size()));
            if (inserted) variables_.emplace_back(t.text);
            return Term::variable(it->second);
        }
        case Tok::Integer: {
            shift();
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
            if (ec != std::errc{} || value > (std::int64_t{1} << 61)) {
                throw ParseError(t.span, "integer constant out of range");
            }
            return Term::constant(Constant::integer(value));
        }
        case Tok::Ident:
            if (t.text == "not") fail("expected a term");
            [[fallthrough]];
        case Tok::String: shift(); return Term::constant(Constant::symbol(symbols_.intern_symbol(t.text)));
        default: fail("expected a term");
        }
    }

    Lexer lexer_;
    SymbolTable& symbols_;
    Token tok_;
    std::vector<std::string> variables_;
    std::unordered_map<std::string, VarIndex> var_ids_;
};

} // namespace

Program parse_program(std::span<const Source> sources) {
    Program program;
    Parser parser(sources, program.symbols);
    parser.parse_program(program);
    return program;
}

Program parse_program(std::string_view text, std::string_view file) {
    Source source{std::string(file), std::string(text)};
    return parse_program(std::span<const Source>(&source, 1));
}

Query parse_query(std::string_view text, SymbolTable& symbols, std::string_view file) {
    Source source{std::string(file), std::string(text)};
    Parser parser(std::span<const Source>(&source, 1), symbols);
    return parser.parse_standalone_query();
}

std::vector<Literal> parse_literal_set(std::string_view text, SymbolTable& symbols, std::string_view file) {
    Source source{std::string(file), std::string(text)};
    Parser parser(std::span<const Source>(&source, 1), symbols);
    return parser.parse_set();
}

} // namespace dlp
