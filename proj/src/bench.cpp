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

#include "dlp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "dlp/grounder.hpp"
#include "dlp/parser.hpp"

namespace dlp::bench {

namespace {

using Pair = std::pair<std::uint32_t, std::uint32_t>;

std::string node(std::uint32_t i) { return "n" + std::to_string(i); }
std::string company(std::uint32_t i) { return "c" + std::to_string(i); }

/// First k elements of a uniform random permutation of `items`.
template <class T>
std::vector<T> sample(std::vector<T> items, std::size_t k, SplitMix64& rng) {
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(items.size() - i);
        std::swap(items[i], items[j]);
    }
    items.resize(k);
    return items;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

Instance generate_3col(const InstanceSpec& spec, SplitMix64& rng) {
    require(spec.nodes >= 1, "3col needs at least one node");
    Instance out;
    out.spec = spec;
    std::vector<std::uint32_t> color(spec.nodes, 0);
    if (spec.planted) {
        for (auto& c : color) c = static_cast<std::uint32_t>(rng.below(3));
    }
    std::vector<Pair> pool;
    for (std::uint32_t i = 0; i < spec.nodes; ++i) {
        for (std::uint32_t j = i + 1; j < spec.nodes; ++j) {
            if (!spec.planted || color[i] != color[j]) pool.emplace_back(i, j);
        }
    }
    require(spec.edges <= pool.size(), "more edges than available node pairs");
    out.edges = sample(std::move(pool), spec.edges, rng);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

Instance generate_hpath(const InstanceSpec& spec, SplitMix64& rng) {
    require(spec.nodes >= 1, "hpath needs at least one node");
    const std::size_t n = spec.nodes;
    require(spec.edges <= n * (n - 1), "more arcs than ordered node pairs");
    Instance out;
    out.spec = spec;
    std::vector<Pair> path;
    if (spec.planted) {
        require(spec.edges + 1 >= n, "a planted path needs nodes-1 arcs");
        std::vector<std::uint32_t> order(n - 1);
        std::iota(order.begin(), order.end(), 1u);
        order = sample(std::move(order), order.size(), rng);
        std::uint32_t prev = 0;
        for (std::uint32_t v : order) {
            path.emplace_back(prev, v);
            prev = v;
        }
    }
    std::vector<Pair> pool;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            if (i != j && std::find(path.begin(), path.end(), Pair{i, j}) == path.end()) pool.emplace_back(i, j);
        }
    }
    out.edges = sample(std::move(pool), spec.edges - path.size(), rng);
    out.edges.insert(out.edges.end(), path.begin(), path.end());
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

Instance generate_stratcomp(const InstanceSpec& spec, SplitMix64& rng) {
    require(spec.companies >= 1, "stratcomp needs at least one company");
    require(spec.density >= 0 && spec.density <= 1, "density must lie in [0, 1]");
    const auto c = static_cast<std::uint32_t>(spec.companies);
    Instance out;
    out.spec = spec;
    for (std::size_t k = 0; k < spec.products; ++k) {
        if (c < 2 || rng.below(8) == 0) {
            const auto only = static_cast<std::uint32_t>(rng.below(c));
            out.products.push_back({only, only});
        } else {
            const auto a = static_cast<std::uint32_t>(rng.below(c));
            auto b = static_cast<std::uint32_t>(rng.below(c - 1));
            if (b >= a) ++b;
            out.products.push_back({a, b});
        }
    }
    for (std::uint32_t w = 0; w < c && c >= 2; ++w) {
        if (rng.unit() >= spec.density) continue;
        std::vector<std::uint32_t> others;
        for (std::uint32_t x = 0; x < c; ++x) {
            if (x != w) others.push_back(x);
        }
        const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, others.size()));
        const auto picked = sample(std::move(others), k, rng);
        out.controls.push_back({w, {picked[0], picked[1 % k], picked[2 % k]}});
    }
    return out;
}

Instance generate_prime(const InstanceSpec& spec, SplitMix64& rng) {
    require(spec.vars >= 3, "prime needs at least three variables");
    Instance out;
    out.spec = spec;
    std::vector<std::uint32_t> vars(spec.vars);
    std::iota(vars.begin(), vars.end(), 0u);
    for (std::size_t k = 0; k < spec.clauses; ++k) {
        const auto picked = sample(vars, 3, rng);
        std::array<std::pair<std::uint32_t, bool>, 3> clause;
        for (std::size_t i = 0; i < 3; ++i) clause[i] = {picked[i], rng.below(2) == 0};
        out.clauses.push_back(clause);
    }
    return out;
}

std::set<Solution> oracle_3col(const Instance& in) {
    static const char* const names[] = {"red", "green", "blue"};
    const std::size_t n = in.spec.nodes;
    std::set<Solution> out;
    std::vector<std::uint32_t> color(n, 0);
    for (;;) {
        const bool proper = std::all_of(in.edges.begin(), in.edges.end(),
                                        [&](const Pair& e) { return color[e.first] != color[e.second]; });
        if (proper) {
            Solution s;
            for (std::uint32_t i = 0; i < n; ++i) s.push_back("col(" + node(i) + "," + names[color[i]] + ")");
            std::sort(s.begin(), s.end());
            out.insert(std::move(s));
        }
        std::size_t i = 0;
        while (i < n && ++color[i] == 3) color[i++] = 0;
        if (i == n) break;
    }
    return out;
}

std::set<Solution> oracle_hpath(const Instance& in) {
    const std::size_t n = in.spec.nodes;
    std::vector<std::vector<std::uint32_t>> succ(n);
    for (const Pair& a : in.edges) succ[a.first].push_back(a.second);
    std::set<Solution> out;
    std::vector<std::uint32_t> path{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    auto arc_text = [](std::uint32_t a, std::uint32_t b) { return "inPath(" + node(a) + "," + node(b) + ")"; };
    std::function<void()> extend = [&] {
        if (path.size() == n) {
            Solution s;
            for (std::size_t i = 1; i < path.size(); ++i) s.push_back(arc_text(path[i - 1], path[i]));
            std::sort(s.begin(), s.end());
            // without the stripping constraint a closing arc into the start is also allowed
            const auto& last = succ[path.back()];
            if (!in.spec.strip_constraint && n > 1 && std::find(last.begin(), last.end(), 0u) != last.end()) {
                Solution cycle = s;
                cycle.push_back(arc_text(path.back(), 0));
                std::sort(cycle.begin(), cycle.end());
                out.insert(std::move(cycle));
            }
            out.insert(std::move(s));
            return;
        }
        for (std::uint32_t next : succ[path.back()]) {
            if (seen[next]) continue;
            seen[next] = true;
            path.push_back(next);
            extend();
            path.pop_back();
            seen[next] = false;
        }
    };
    extend();
    return out;
}

std::set<Solution> oracle_stratcomp(const Instance& in) {
    const std::size_t c = in.spec.companies;
    auto has = [](std::uint32_t set, std::uint32_t i) { return (set >> i) & 1u; };
    std::vector<std::uint32_t> good;
    for (std::uint32_t set = 0; set < (1u << c); ++set) {
        const bool covers = std::all_of(in.products.begin(), in.products.end(), [&](const auto& p) {
            return has(set, p[0]) || has(set, p[1]);
        });
        const bool closed = std::all_of(in.controls.begin(), in.controls.end(), [&](const auto& ctl) {
            const auto& [w, by] = ctl;
            return has(set, w) || !(has(set, by[0]) && has(set, by[1]) && has(set, by[2]));
        });
        if (covers && closed) good.push_back(set);
    }
    std::set<Solution> out;
    for (std::uint32_t s : good) {
        const bool minimal =
            std::none_of(good.begin(), good.end(), [&](std::uint32_t t) { return t != s && (t & s) == t; });
        if (!minimal) continue;
        Solution sol;
        for (std::uint32_t i = 0; i < c; ++i) {
            if (has(s, i)) sol.push_back("strat(" + company(i) + ")");
        }
        std::sort(sol.begin(), sol.end());
        out.insert(std::move(sol));
    }
    return out;
}

std::set<Solution> oracle_prime(const Instance& in) {
    const std::size_t n = in.spec.vars;
    // value per variable: 0 absent, 1 positive, 2 negative
    std::vector<std::uint8_t> value(n, 0);
    auto implicant = [&] {
        return std::all_of(in.clauses.begin(), in.clauses.end(), [&](const auto& clause) {
            return std::any_of(clause.begin(), clause.end(),
                               [&](const auto& lit) { return value[lit.first] == (lit.second ? 1 : 2); });
        });
    };
    std::set<Solution> out;
    for (;;) {
        if (implicant()) {
            bool prime = true;
            for (std::size_t v = 0; v < n && prime; ++v) {
                if (value[v] == 0) continue;
                const std::uint8_t saved = value[v];
                value[v] = 0;
                prime = !implicant();
                value[v] = saved;
            }
            if (prime) {
                Solution s;
                for (std::size_t v = 0; v < n; ++v) {
                    if (value[v] != 0) s.push_back("hit(v" + std::to_string(v) + "," + (value[v] == 1 ? "p" : "n") + ")");
                }
                std::sort(s.begin(), s.end());
                out.insert(std::move(s));
            }
        }
        std::size_t i = 0;
        while (i < n && ++value[i] == 3) value[i++] = 0;
        if (i == n) break;
    }
    return out;
}

} // namespace

std::optional<Kind> parse_kind(std::string_view name) {
    if (name == "3col") return Kind::ThreeCol;
    if (name == "hpath") return Kind::HPath;
    if (name == "stratcomp") return Kind::StratComp;
    if (name == "prime") return Kind::Prime;
    return std::nullopt;
}

std::string_view kind_name(Kind kind) {
    switch (kind) {
    case Kind::ThreeCol: return "3col";
    case Kind::HPath: return "hpath";
    case Kind::StratComp: return "stratcomp";
    case Kind::Prime: return "prime";
    }
    return "?";
}

std::string encoding(Kind kind, bool strip_constraint) {
    switch (kind) {
    case Kind::ThreeCol:
        return "col(X,red) v col(X,green) v col(X,blue) :- node(X).\n"
               ":- edge(X,Y), col(X,C), col(Y,C).\n";
    case Kind::HPath: {
        std::string p = "inPath(X,Y) v outPath(X,Y) :- arc(X,Y).\n"
                        ":- inPath(X,Y), inPath(X,Y1), Y <> Y1.\n"
                        ":- inPath(X,Y), inPath(X1,Y), X <> X1.\n"
                        ":- node(X), not reached(X).\n"
                        "reached(X) :- start(X).\n"
                        "reached(X) :- reached(Y), inPath(Y,X).\n";
        if (strip_constraint) p += ":- start(Y), inPath(_,Y).\n";
        return p;
    }
    case Kind::StratComp:
        return "strat(Y) v strat(Z) :- produced_by(X,Y,Z).\n"
               "strat(W) :- controlled_by(W,X,Y,Z), strat(X), strat(Y), strat(Z).\n";
    case Kind::Prime:
        return "hit(V1,S1) v hit(V2,S2) v hit(V3,S3) :- clause(C,V1,S1,V2,S2,V3,S3).\n"
               ":- hit(V,p), hit(V,n).\n";
    }
    return {};
}

std::string Instance::name() const {
    std::string out(kind_name(spec.kind));
    switch (spec.kind) {
    case Kind::ThreeCol:
    case Kind::HPath:
        out += "-n" + std::to_string(spec.nodes) + "-e" + std::to_string(spec.edges);
        break;
    case Kind::StratComp:
        out += "-c" + std::to_string(spec.companies) + "-p" + std::to_string(spec.products);
        break;
    case Kind::Prime:
        out += "-k" + std::to_string(spec.clauses) + "-v" + std::to_string(spec.vars);
        break;
    }
    if (spec.planted) out += "-planted";
    return out + "-s" + std::to_string(spec.seed);
}

std::string Instance::facts() const {
    std::string out;
    switch (spec.kind) {
    case Kind::ThreeCol:
        for (std::uint32_t i = 0; i < spec.nodes; ++i) out += "node(" + node(i) + ").\n";
        for (const Pair& e : edges) out += "edge(" + node(e.first) + "," + node(e.second) + ").\n";
        break;
    case Kind::HPath:
        for (std::uint32_t i = 0; i < spec.nodes; ++i) out += "node(" + node(i) + ").\n";
        for (const Pair& a : edges) out += "arc(" + node(a.first) + "," + node(a.second) + ").\n";
        out += "start(" + node(0) + ").\n";
        break;
    case Kind::StratComp:
        for (std::size_t k = 0; k < products.size(); ++k) {
            out += "produced_by(p" + std::to_string(k) + "," + company(products[k][0]) + "," +
                   company(products[k][1]) + ").\n";
        }
        for (const auto& [w, by] : controls) {
            out += "controlled_by(" + company(w) + "," + company(by[0]) + "," + company(by[1]) + "," +
                   company(by[2]) + ").\n";
        }
        break;
    case Kind::Prime:
        for (std::size_t k = 0; k < clauses.size(); ++k) {
            out += "clause(k" + std::to_string(k);
            for (const auto& [v, positive] : clauses[k]) {
                out += ",v" + std::to_string(v) + (positive ? ",p" : ",n");
            }
            out += ").\n";
        }
        break;
    }
    return out;
}

Instance generate(const InstanceSpec& spec) {
    SplitMix64 rng(spec.seed);
    switch (spec.kind) {
    case Kind::ThreeCol: return generate_3col(spec, rng);
    case Kind::HPath: return generate_hpath(spec, rng);
    case Kind::StratComp: return generate_stratcomp(spec, rng);
    case Kind::Prime: return generate_prime(spec, rng);
    }
    throw std::invalid_argument("unknown instance kind");
}

std::string program_text(const Instance& instance) {
    return encoding(instance.spec.kind, instance.spec.strip_constraint) + instance.facts();
}

std::string_view solution_predicate(Kind kind) {
    switch (kind) {
    case Kind::ThreeCol: return "col";
    case Kind::HPath: return "inPath";
    case Kind::StratComp: return "strat";
    case Kind::Prime: return "hit";
    }
    return {};
}

std::set<Solution> oracle(const Instance& instance) {
    const InstanceSpec& s = instance.spec;
    switch (s.kind) {
    case Kind::ThreeCol:
        require(s.nodes <= 10, "3col oracle is capped at 10 nodes");
        return oracle_3col(instance);
    case Kind::HPath:
        require(s.nodes <= 10, "hpath oracle is capped at 10 nodes");
        return oracle_hpath(instance);
    case Kind::StratComp:
        require(s.companies <= 10, "stratcomp oracle is capped at 10 companies");
        return oracle_stratcomp(instance);
    case Kind::Prime:
        require(s.vars <= 12, "prime oracle is capped at 12 variables");
        return oracle_prime(instance);
    }
    return {};
}

Solution project(const GroundProgram& gp, const Interpretation& x, std::string_view predicate) {
    Solution out;
    for (LiteralId l : x) {
        if (gp.symbols().predicate(gp.predicate(atom_of(l))).name == predicate) out.push_back(gp.literal_text(l));
    }
    std::sort(out.begin(), out.end());
    return out;
}

SolveResult solve(const Instance& instance, std::size_t limit, std::string_view extra, bool keep) {
    const auto start = std::chrono::steady_clock::now();
    std::string text = program_text(instance);
    text += extra;
    const Program program = parse_program(text, instance.name());
    const GroundProgram gp = ground_program(program);
    ModelGenerator generator(gp);
    SolveResult result;
    const std::string_view predicate = solution_predicate(instance.spec.kind);
    while (limit == 0 || result.answer_sets < limit) {
        auto x = generator.next();
        if (!x) break;
        ++result.answer_sets;
        if (keep) result.solutions.push_back(project(gp, *x, predicate));
    }
    result.stats = generator.stats();
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace dlp::bench
