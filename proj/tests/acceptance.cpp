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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. The property suites (criterion 6) are linked into this
// binary and run through doctest.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "dlp/bench.hpp"
#include "dlp/checker.hpp"
#include "dlp/grounder.hpp"
#include "dlp/parser.hpp"
#include "dlp/solver.hpp"
#include "support/naive.hpp"

#ifndef DLP_BINARY
#error "DLP_BINARY must name the dlp executable"
#endif

using namespace dlp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double max_rss_mb() {
    rusage u{};
    getrusage(RUSAGE_SELF, &u);
    return static_cast<double>(u.ru_maxrss) / 1024.0; // kB on Linux
}

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Verdict()>& body) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", n, title.c_str(), v.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
}

// Every subset of B_P of a propositional program, filtered by the checker.
naive::TextFamily checker_brute_force(const GroundProgram& gp) {
    naive::TextFamily out;
    const std::size_t n = gp.literal_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<LiteralId> ids;
        for (std::size_t l = 0; l < n; ++l) {
            if (mask >> l & 1) ids.push_back(static_cast<LiteralId>(l));
        }
        const Interpretation x(std::move(ids));
        if (is_answer_set(gp, x)) out.insert(naive::texts(gp, x));
    }
    return out;
}

Verdict oracle_equivalence() {
    std::mt19937_64 rng(2026);
    naive::RandomGroundSpec spec;
    spec.atoms = 6; // 12 literals with both signs
    spec.max_rules = 10;
    spec.max_head = 3;
    const auto t0 = Clock::now();
    int mismatches = 0, nonempty = 0;
    const int cases = 600;
    for (int i = 0; i < cases; ++i) {
        const GroundProgram gp = naive::random_ground_program(rng, spec);
        naive::TextFamily solved;
        for (const Interpretation& x : enumerate_answer_sets(gp)) solved.insert(naive::texts(gp, x));
        const naive::TextFamily by_checker = checker_brute_force(gp);
        const naive::TextFamily by_definition = naive::answer_sets(gp);
        if (solved != by_checker || solved != by_definition) ++mismatches;
        if (!solved.empty()) ++nonempty;
    }
    const double t = seconds_since(t0);
    std::ostringstream d;
    d << cases << " programs, " << nonempty << " with answer sets, " << mismatches << " mismatches, " << t << " s";
    return {mismatches == 0 && t < 60.0, d.str()};
}

template <class MakeSpec>
Verdict bench_against_oracle(MakeSpec make) {
    int mismatches = 0;
    std::size_t solutions = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const bench::Instance in = bench::generate(make(seed));
        const bench::SolveResult r = bench::solve(in);
        const std::set<bench::Solution> got(r.solutions.begin(), r.solutions.end());
        const bool one_to_one = got.size() == r.solutions.size();
        if (!one_to_one || got != bench::oracle(in)) ++mismatches;
        solutions += got.size();
    }
    std::ostringstream d;
    d << "100 seeds, " << solutions << " solutions, " << mismatches << " mismatches";
    return {mismatches == 0, d.str()};
}

Verdict hpath_oracle() {
    return bench_against_oracle([](std::uint64_t seed) {
        bench::SplitMix64 rng(seed * 7919);
        bench::InstanceSpec s{bench::Kind::HPath};
        s.nodes = 2 + rng.below(7);
        s.edges = 1 + rng.below(s.nodes * (s.nodes - 1));
        s.planted = seed % 2 == 0 && s.edges >= s.nodes - 1;
        s.seed = seed;
        return s;
    });
}

Verdict stratcomp_oracle() {
    return bench_against_oracle([](std::uint64_t seed) {
        bench::SplitMix64 rng(seed * 104729);
        bench::InstanceSpec s{bench::Kind::StratComp};
        s.companies = 2 + rng.below(7);
        s.products = 1 + rng.below(2 * s.companies);
        s.density = 0.2 + 0.6 * rng.unit();
        s.seed = seed;
        return s;
    });
}

// Criterion 4 instances; criterion 7 reuses them.
struct Entry {
    std::string label;
    bench::Instance instance;
    std::size_t limit;
    std::string extra;
};

std::vector<Entry> suite() {
    bench::InstanceSpec col{bench::Kind::ThreeCol, 150, 350};
    col.planted = true;
    bench::InstanceSpec hp{bench::Kind::HPath, 25, 120};
    hp.planted = true;
    bench::InstanceSpec sc{bench::Kind::StratComp};
    sc.companies = 71;
    sc.products = 213;
    return {{"3col 150/350", bench::generate(col), 1, ""},
            {"hpath 25/120", bench::generate(hp), 1, ""},
            {"stratcomp 71/213 with c0", bench::generate(sc), 0, ":- not strat(c0).\n"}};
}

Verdict desk_scale() {
    std::ostringstream d;
    bool ok = true;
    for (const Entry& e : suite()) {
        const bench::SolveResult r = bench::solve(e.instance, e.limit, e.extra, false);
        const bool found = r.answer_sets > 0;
        ok = ok && found && r.seconds < 120.0;
        d << e.label << ": " << r.answer_sets << " answer set(s) in " << r.seconds << " s; ";
    }
    return {ok, d.str()};
}

Verdict capacity() {
    const std::size_t n = 1000000;
    std::string text;
    text.reserve(n * 16);
    for (std::size_t i = 0; i < n; ++i) text += "e(c" + std::to_string(i) + ").\n";
    text += "f(X) :- e(X), not g(X).\n";
    const auto t0 = Clock::now();
    const Program p = parse_program(text);
    const GroundProgram gp = ground_program(p);
    const double t = seconds_since(t0);
    const double mb = max_rss_mb();
    std::ostringstream d;
    d << p.rules.size() << " input rules, " << gp.rule_count() << " ground rules, " << t << " s, max RSS " << mb
      << " MB";
    return {gp.rule_count() == 2 * n && t < 180.0 && mb < 4096.0, d.str()};
}

Verdict invariant_suites(int argc, char** argv) {
    doctest::Context context(argc, argv);
    context.setOption("minimal", true);
    context.setOption("no-intro", true);
    const int rc = context.run();
    return {rc == 0, rc == 0 ? "6 property suites, 250 random cases each, all green" : "property failures, see doctest output"};
}

std::string run_dlp(const std::vector<std::string>& args) {
    std::string cmd = DLP_BINARY;
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot run " + cmd);
    std::string out;
    char buf[65536];
    for (std::size_t k; (k = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, k);
    if (pclose(pipe) != 0) throw std::runtime_error("dlp exited with an error: " + cmd);
    return out;
}

Verdict determinism() {
    const auto dir = std::filesystem::temp_directory_path() / ("dlp_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    std::vector<Entry> entries = suite();
    bench::InstanceSpec prime{bench::Kind::Prime};
    prime.clauses = 60;
    prime.vars = 20;
    entries.push_back({"prime 60/20", bench::generate(prime), 50, ""});
    std::ostringstream d;
    bool ok = true;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Entry& e = entries[k];
        const auto path = dir / ("entry" + std::to_string(k) + ".dl");
        std::ofstream(path) << bench::program_text(e.instance) << e.extra;
        std::set<std::size_t> hashes;
        std::size_t lines = 0;
        for (int run = 0; run < 20; ++run) {
            const std::string out = run_dlp({"-n=" + std::to_string(e.limit), path.string()});
            hashes.insert(std::hash<std::string>{}(out));
            lines = static_cast<std::size_t>(std::count(out.begin(), out.end(), '\n'));
        }
        ok = ok && hashes.size() == 1 && lines > 0;
        d << e.label << ": " << hashes.size() << " distinct hash(es) over 20 runs, " << lines << " lines; ";
    }
    std::filesystem::remove_all(dir);
    return {ok, d.str()};
}

} // namespace

int main(int argc, char** argv) {
    report(1, "oracle equivalence", oracle_equivalence);
    report(2, "hpath vs exhaustive search", hpath_oracle);
    report(3, "stratcomp vs minimal strategic sets", stratcomp_oracle);
    report(4, "desk-scale performance", desk_scale);
    report(5, "capacity", capacity);
    report(6, "invariant suites", [&] { return invariant_suites(argc, argv); });
    report(7, "determinism", determinism);
    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
