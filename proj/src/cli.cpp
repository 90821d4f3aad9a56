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

#include "dlp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <new>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "dlp/checker.hpp"
#include "dlp/error.hpp"
#include "dlp/frontends.hpp"
#include "dlp/grounder.hpp"
#include "dlp/parser.hpp"
#include "dlp/solver.hpp"

namespace dlp {

namespace {

template <class T>
T parse_number(std::string_view flag, std::string_view text) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument("invalid value for " + std::string(flag) + ": '" + std::string(text) + "'");
    }
    return value;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* mode_flag(RunMode m) {
    switch (m) {
    case RunMode::Brave: return "-brave";
    case RunMode::Cautious: return "-cautious";
    case RunMode::GroundOnly: return "--ground-only";
    case RunMode::Check: return "--check";
    case RunMode::Solve: break;
    }
    return "";
}

void print_stats(std::ostream& err, const GroundingStats& g, const SolverStats& s) {
    err << "ground rules: " << g.emitted_rules << '\n'
        << "arithmetic overflows: " << g.arithmetic_overflows << '\n'
        << "choices: " << s.choices << '\n'
        << "backtracks: " << s.backtracks << '\n'
        << "candidates: " << s.candidates << '\n'
        << "rejected: " << s.rejected << '\n';
}

int check_mode(const RunConfig& config, std::vector<Source>& sources, std::ostream& out, std::ostream& err) {
    if (sources.size() < 2) {
        err << "error: --check needs a program and a candidate file\n";
        return kExitParse;
    }
    Source candidate = std::move(sources.back());
    sources.pop_back();
    Program program = parse_program(sources);
    program.max_int = config.max_int;
    std::vector<Literal> literals = parse_literal_set(candidate.text, program.symbols, candidate.name);
    GroundProgram gp = ground_program(program);
    std::vector<LiteralId> ids;
    for (const Literal& l : literals) ids.push_back(gp.intern_literal(l));
    const Interpretation x(std::move(ids));
    const CheckResult result = check_answer_set(gp, x);
    switch (result.failure) {
    case CheckFailure::None: out << "answer set\n"; break;
    case CheckFailure::Inconsistent: out << "not an answer set: inconsistent\n"; break;
    case CheckFailure::NotClosed:
        out << "not an answer set: not closed under the reduct, violated rule: " << gp.rule_text(*result.violated_rule)
            << '\n';
        break;
    case CheckFailure::NotMinimal:
        out << "not an answer set: not minimal, smaller model: " << format_answer_set(gp, *result.smaller_model)
            << '\n';
        break;
    }
    return kExitOk;
}

} // namespace

std::string usage() {
    return "usage: dlp [options] file...\n"
           "  -n=<N>            print at most N answer sets (0 = all)\n"
           "  -N=<maxint>       integers 0..maxint are available to built-ins\n"
           "  -filter=<p,q,..>  print only literals of these predicates\n"
           "  -brave            answer the query in some answer set\n"
           "  -cautious         answer the query in all answer sets\n"
           "  --ground-only     print the ground program\n"
           "  --check           last file is a candidate {l1, ...}; verify it\n"
           "  --stats           search statistics on stderr\n"
           "  --unique          do not repeat identical filtered answer sets\n"
           "  --witness         with -brave/-cautious, print the witness answer set\n";
}

RunConfig parse_arguments(std::span<const std::string> args) {
    RunConfig config;
    bool mode_set = false;
    auto set_mode = [&](RunMode m) {
        if (mode_set && config.mode != m) {
            throw std::invalid_argument(std::string("conflicting modes ") + mode_flag(config.mode) + " and " +
                                        mode_flag(m));
        }
        config.mode = m;
        mode_set = true;
    };
    for (const std::string& a : args) {
        std::string_view arg = a;
        if (arg.starts_with("-n=")) {
            config.max_answer_sets = parse_number<std::size_t>("-n", arg.substr(3));
        } else if (arg.starts_with("-N=")) {
            config.max_int = parse_number<std::int64_t>("-N", arg.substr(3));
        } else if (arg.starts_with("-filter=")) {
            std::string_view rest = arg.substr(8);
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                std::string_view name = rest.substr(0, comma);
                if (!name.empty()) config.filter.emplace(name);
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
        } else if (arg == "-brave") {
            set_mode(RunMode::Brave);
        } else if (arg == "-cautious") {
            set_mode(RunMode::Cautious);
        } else if (arg == "--ground-only") {
            set_mode(RunMode::GroundOnly);
        } else if (arg == "--check") {
            set_mode(RunMode::Check);
        } else if (arg == "--stats") {
            config.stats = true;
        } else if (arg == "--unique") {
            config.unique = true;
        } else if (arg == "--witness") {
            config.witness = true;
        } else if (arg.size() > 1 && arg[0] == '-') {
            throw std::invalid_argument("unknown option " + a);
        } else {
            config.inputs.push_back(a);
        }
    }
    if (config.inputs.empty()) throw std::invalid_argument("no input files");
    return config;
}

std::string format_answer_set(const GroundProgram& gp, const Interpretation& x, const std::set<std::string>& filter) {
    const SymbolTable& symbols = gp.symbols();
    std::vector<LiteralId> shown;
    for (LiteralId l : x) {
        if (filter.empty() || filter.count(symbols.predicate(gp.predicate(atom_of(l))).name)) shown.push_back(l);
    }
    std::sort(shown.begin(), shown.end(), [&](LiteralId a, LiteralId b) {
        const auto& na = symbols.predicate(gp.predicate(atom_of(a))).name;
        const auto& nb = symbols.predicate(gp.predicate(atom_of(b))).name;
        if (na != nb) return na < nb;
        const auto aa = gp.args(atom_of(a));
        const auto ab = gp.args(atom_of(b));
        for (std::size_t i = 0; i < std::min(aa.size(), ab.size()); ++i) {
            const auto c = compare_constants(aa[i], ab[i], symbols);
            if (c != 0) return c < 0;
        }
        if (aa.size() != ab.size()) return aa.size() < ab.size();
        return !is_strongly_negated(a) && is_strongly_negated(b);
    });
    std::string out = "{";
    for (std::size_t i = 0; i < shown.size(); ++i) {
        if (i != 0) out += ", ";
        out += gp.literal_text(shown[i]);
    }
    out += '}';
    return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::vector<Source> sources;
        for (const std::string& path : config.inputs) sources.push_back({path, read_file(path)});
        if (config.mode == RunMode::Check) return check_mode(config, sources, out, err);

        Program program = parse_program(sources);
        program.max_int = config.max_int;
        const bool query_mode = config.mode == RunMode::Brave || config.mode == RunMode::Cautious;
        if (program.query && !query_mode) {
            err << program.query->span.to_string()
                << ": warning: query ignored without -brave or -cautious\n";
        }
        if (query_mode && !program.query) {
            err << "error: " << mode_flag(config.mode) << " needs a query (l1, ..., ln?) in the input\n";
            return kExitParse;
        }

        GroundingStats gstats;
        GroundProgram gp = ground_program(program, {}, &gstats);
        if (gstats.arithmetic_overflows > 0) {
            err << "warning: " << gstats.arithmetic_overflows
                << " rule instance(s) dropped, arithmetic result outside 0.." << program.max_int << '\n';
        }
        if (config.mode == RunMode::GroundOnly) {
            out << gp.to_text();
            if (config.stats) print_stats(err, gstats, {});
            return kExitOk;
        }

        if (query_mode) {
            const auto universe = herbrand_universe(program);
            const QueryAnswer answer = config.mode == RunMode::Brave
                                           ? brave(gp, *program.query, universe)
                                           : cautious(gp, *program.query, universe);
            out << format_answer(answer, *program.query, gp.symbols());
            if (config.witness && answer.witness) {
                out << (config.mode == RunMode::Brave ? "witness: " : "counterexample: ")
                    << format_answer_set(gp, *answer.witness, config.filter) << '\n';
            }
            return kExitOk;
        }

        ModelGenerator generator(gp);
        std::unordered_set<std::string> printed;
        std::size_t count = 0;
        while (config.max_answer_sets == 0 || count < config.max_answer_sets) {
            auto x = generator.next();
            if (!x) break;
            std::string line = format_answer_set(gp, *x, config.filter);
            if (config.unique && !printed.insert(line).second) continue;
            out << line << '\n';
            ++count;
        }
        out.flush();
        if (config.stats) print_stats(err, gstats, generator.stats());
        return kExitOk;
    } catch (const SafetyError& e) {
        err << e.what() << '\n';
        return kExitSafety;
    } catch (const ArityError& e) {
        err << e.what() << '\n';
        return kExitSafety;
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return kExitParse;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::bad_alloc&) {
        err << "resource error: out of memory\n";
        return kExitResource;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }
}

} // namespace dlp
