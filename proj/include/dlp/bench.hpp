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

#ifndef DLP_BENCH_HPP
#define DLP_BENCH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlp/ground_program.hpp"
#include "dlp/solver.hpp"

namespace dlp::bench {

/// SplitMix64 (Steele, Lea, Flood). State advances by 0x9E3779B97F4A7C15;
/// output is the state mixed by two xor-shift-multiply rounds. See
/// docs/prng.md for the exact reduction used by below() and unit().
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n), n > 0, by rejection of the low residue class.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    /// Uniform in [0, 1) with 53 bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

enum class Kind { ThreeCol, HPath, StratComp, Prime };

std::optional<Kind> parse_kind(std::string_view name);
std::string_view kind_name(Kind kind);

struct InstanceSpec {
    Kind kind = Kind::ThreeCol;
    std::size_t nodes = 0;     // 3col, hpath
    std::size_t edges = 0;     // 3col: undirected edges; hpath: arcs
    std::size_t companies = 0; // stratcomp
    std::size_t products = 0;  // stratcomp
    std::size_t clauses = 0;   // prime
    std::size_t vars = 0;      // prime
    /// stratcomp: probability that a company has a controlled_by fact.
    double density = 0.25;
    std::uint64_t seed = 1;
    /// 3col: edges respect a hidden coloring. hpath: arcs contain a hidden
    /// Hamiltonian path from the start node.
    bool planted = false;
    /// hpath: include the constraint forbidding arcs into the start node.
    bool strip_constraint = true;
};

struct Instance {
    InstanceSpec spec;
    /// 3col: edges (i < j). hpath: arcs (i != j). Indices into 0..nodes-1;
    /// node i is named n<i> and the hpath start is node 0.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    /// stratcomp: the two producers of product k (equal for a single one).
    std::vector<std::array<std::uint32_t, 2>> products;
    /// stratcomp: company w is controlled by the listed companies (three
    /// slots, repeated when fewer than three controllers).
    std::vector<std::pair<std::uint32_t, std::array<std::uint32_t, 3>>> controls;
    /// prime: three (variable, positive) pairs per clause.
    std::vector<std::array<std::pair<std::uint32_t, bool>, 3>> clauses;

    std::string name() const;
    std::string facts() const;
};

/// Guess&check program for the kind (no facts).
std::string encoding(Kind kind, bool strip_constraint = true);

/// Throws std::invalid_argument for infeasible parameters.
Instance generate(const InstanceSpec& spec);

std::string program_text(const Instance& instance);

/// Predicate the solutions are projected onto.
std::string_view solution_predicate(Kind kind);

/// A solution as the sorted texts of its projected literals.
using Solution = std::vector<std::string>;

/// Exhaustive search, independent of the solver. Caps: 10 nodes, 10
/// companies, 12 variables; throws std::invalid_argument beyond them.
std::set<Solution> oracle(const Instance& instance);

Solution project(const GroundProgram& gp, const Interpretation& x, std::string_view predicate);

struct SolveResult {
    std::vector<Solution> solutions;
    std::size_t answer_sets = 0;
    double seconds = 0;
    SolverStats stats;
};

/// Grounds and solves the instance program plus `extra` rules, keeping at
/// most `limit` answer sets (0 = all). Projections are stored only when
/// `keep` is set.
SolveResult solve(const Instance& instance, std::size_t limit = 0, std::string_view extra = {}, bool keep = true);

} // namespace dlp::bench

#endif
