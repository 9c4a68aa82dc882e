// One PASS/FAIL line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "scopeq/generators.hpp"
#include "scopeq/specializer.hpp"

using namespace scopeq;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string alpha(const char* text) { return oracle::alpha_normal(ir::parse_machine(text)); }

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        out += (out.empty() ? "" : "; ") + s;
    }
    return out;
}

// 1
Outcome golden_traces() {
    Outcome o;
    const auto t0 = Clock::now();
    struct Case {
        const char* graph;
        const char* query;
        std::vector<std::string> expected;
    };
    const std::vector<Case> cases{
        {"pcf_graph.json", "pcf_query.json", {"slam -P-> sl -VAR-> sx"}},
        {"lm_graph.json", "lm_query.json", {"sE -I-> sC -VAR-> s2", "sE -P-> sD -VAR-> s3"}},
    };
    for (const Case& c : cases) {
        const ScopeGraph g = fixtures::graph(c.graph);
        const Query q = fixtures::query(c.query);
        for (cli::Mode m : {cli::Mode::Generic, cli::Mode::Specialized, cli::Mode::BruteForce}) {
            const cli::RunReport r = cli::run_mode(m, g, q);
            o.require(r.env == c.expected, std::string(c.query) + " " + cli::mode_name(m) + " gave {" +
                                               join(r.env) + "}");
        }
    }
    const double secs = seconds_since(t0);
    o.require(secs < 1.0, "took " + std::to_string(secs) + " s");
    if (o.pass) {
        o.detail = "both examples exact in 3 modes, " + std::to_string(secs) + " s";
    }
    return o;
}

// 2
Outcome compilation_golds() {
    Outcome o;
    const PathLabel end = PathLabel::end();
    const PathLabel L(Label("L"));
    struct Case {
        const char* name;
        const char* regex;
        std::vector<LabelPair> order;
        bool use_else;
        const char* listing;
    };
    const std::vector<Case> cases{
        {"single label", "L", {}, false, "state machine\n  n0:\n    e0 := subenv L n1\n  n1:\n    e0 := resolve\n"},
        {"star/merge", "L*", {}, false,
         "state machine\n  n0:\n    e0 := resolve\n    e1 := subenv L n0\n    e2 := merge e0 e1\n"},
        {"star/shadow", "L*", {{end, L}}, false,
         "state machine\n  n0:\n    e0 := resolve\n    e1 := subenv L n0\n    e2 := shadow e0 e1\n"},
        {"star/else", "L*", {{end, L}}, true,
         "state machine\n  n0:\n    e0 := resolve\n    e1 := else e0 (subenv L n0)\n"},
    };
    for (const Case& c : cases) {
        const ir::StateMachine m = eliminate_common_subenvs(
            specialize(canonicalize(parse_regex(c.regex)), LabelOrder::from_pairs(c.order), c.use_else));
        o.require(oracle::alpha_normal(m) == alpha(c.listing),
                  std::string(c.name) + " compiled to\n" + ir::print_machine(m));
    }
    if (o.pass) {
        o.detail = "4 machines alpha-equivalent to the listings";
    }
    return o;
}

// 3
Outcome cse_count() {
    Outcome o;
    const char* left = "state machine\n  n:\n"
                       "    e0 := subenv L1 n\n    e1 := subenv L2 n\n    e2 := shadow e0 e1\n"
                       "    e3 := subenv L1 n\n    e4 := subenv L3 n\n    e5 := shadow e3 e4\n"
                       "    e6 := merge e2 e5\n";
    const char* right = "state machine\n  n:\n"
                        "    e0 := subenv L1 n\n    e1 := subenv L2 n\n    e2 := shadow e0 e1\n"
                        "    e3 := subenv L3 n\n    e4 := shadow e0 e3\n    e5 := merge e2 e4\n";
    const ir::StateMachine before = ir::parse_machine(left);
    const ir::StateMachine after = eliminate_common_subenvs(before);
    o.require(before.assignment_count() == 7, "left state does not have 7 assignments");
    o.require(after.assignment_count() == 6,
              "optimized to " + std::to_string(after.assignment_count()) + " assignments");
    o.require(oracle::alpha_normal(after) == alpha(right), "optimized state:\n" + ir::print_machine(after));
    if (o.pass) {
        o.detail = "7 -> 6 assignments, matches the right-hand listing";
    }
    return o;
}

std::string repro_dir() {
    std::random_device rd;
    return (std::filesystem::temp_directory_path() / ("scopeq-accept-" + std::to_string(rd()))).string();
}

// 4
Outcome differential() {
    Outcome o;
    const std::string dir = repro_dir();
    std::ostringstream out, err;
    const auto t0 = Clock::now();
    const int code = cli::run({"fuzz", "--seed", "42", "--cases", "1000", "--max-scopes", "12",
                               "--max-labels", "3", "--repro-dir", dir},
                              out, err);
    const double secs = seconds_since(t0);
    o.require(code == 0, "fuzz exited " + std::to_string(code) + ": " + err.str());
    o.require(secs < 300.0, "took " + std::to_string(secs) + " s");
    if (o.pass) {
        o.detail = "1000 cases agree, " + std::to_string(secs) + " s";
    }
    std::filesystem::remove_all(dir);
    return o;
}

// 5
Outcome regex_properties() {
    Outcome o;
    std::mt19937_64 rng(42);
    const auto t0 = Clock::now();
    std::size_t samples = 0;
    for (; samples < 10000 && o.pass; ++samples) {
        const auto sigma = oracle::alphabet(1 + rng() % 3);
        const Regex r = oracle::random_regex(rng, 1 + rng() % 8, sigma);
        const oracle::Word w = oracle::random_word(rng, 6, sigma);
        const std::string tag = " for " + r.to_string();

        const bool in_lang = oracle::words_upto(r, w.size()).contains(w);
        Regex d = r;
        for (const Label& l : w) {
            d = derive(l, d);
        }
        o.require(nullable(d) == in_lang, "derivative membership disagrees" + tag);
        o.require(oracle::words_upto(canonicalize(r), w.size()).contains(w) == in_lang,
                  "canonicalize changed membership" + tag);

        // A shortest witness for any viable first label is no longer than
        // the number of literals, which is at most the regex size.
        std::set<Label> viable;
        for (const auto& word : oracle::words_upto(r, 8)) {
            if (!word.empty()) {
                viable.insert(word.front());
            }
        }
        o.require(head_set(r) == viable, "head set mismatch" + tag);
    }
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, "took " + std::to_string(secs) + " s");
    if (o.pass) {
        o.detail = std::to_string(samples) + " samples, " + std::to_string(secs) + " s";
    }
    return o;
}

// 6
Outcome instrumentation() {
    Outcome o;
    cli::FuzzOptions opts;
    opts.repro_dir = repro_dir();
    std::size_t runs = 0;
    opts.on_case = [&](std::size_t i, const ScopeGraph&, const Query&, const cli::DiffOutcome& d) {
        for (const cli::RunReport& r : d.reports) {
            if (r.mode == cli::Mode::Specialized) {
                ++runs;
                o.require(r.stats.derivative_count == 0 && r.stats.order_query_count == 0,
                          "case " + std::to_string(i) + ": specialized run computed derivatives or orders");
            } else if (r.mode == cli::Mode::Generic) {
                o.require(r.stats.derivative_count >= r.stats.edges_traversed,
                          "case " + std::to_string(i) + ": generic derivative_count < edges_traversed");
            }
        }
    };
    std::ostringstream log;
    const cli::FuzzResult fr = cli::run_fuzz(opts, log);
    std::filesystem::remove_all(opts.repro_dir);
    o.require(fr.cases_run == opts.cases && !fr.first_mismatch, "fuzz did not complete cleanly");

    const Instance chain = synthetic_chain(200);
    const auto machine = cli::compile_query(chain.query, {true, true});
    o.require(machine.has_value(), "chain query did not compile");
    if (machine) {
        const cli::RunReport r = cli::run_mode(cli::Mode::Specialized, chain.graph, chain.query, &*machine);
        o.require(r.stats.edges_traversed == 0,
                  "else machine traversed " + std::to_string(r.stats.edges_traversed) + " edges");
        o.require(r.env == std::vector<std::string>{"s0"}, "chain resolved to {" + join(r.env) + "}");
    }
    if (o.pass) {
        o.detail = std::to_string(runs) + " specialized runs with zero derivative/order work; chain traverses 0 edges";
    }
    return o;
}

// 7
Outcome speedup() {
    Outcome o;
    const Instance lm = synthetic_lm(2000, 7);
    const auto t0 = Clock::now();
    const cli::BenchReport report = cli::run_bench(lm.graph, lm.query, 20, 3);
    const double secs = seconds_since(t0);
    std::ostringstream median;
    median << report.summary.median;
    o.require(report.speedups.size() == 20, "expected 20 speedup samples");
    o.require(report.summary.median >= 1.0, "median speedup " + median.str());
    o.require(secs < 120.0, "took " + std::to_string(secs) + " s");
    if (o.pass) {
        o.detail = "median speedup " + median.str() + "x over 20 iterations, " + std::to_string(secs) + " s";
    }
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"golden traces", golden_traces},
        {"compilation golds", compilation_golds},
        {"common sub-environment count", cse_count},
        {"differential equivalence", differential},
        {"regex properties", regex_properties},
        {"instrumentation", instrumentation},
        {"speedup direction", speedup},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
