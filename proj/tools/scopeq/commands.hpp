#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scopeq/ir.hpp"
#include "scopeq/query.hpp"
#include "scopeq/resolver.hpp"
#include "scopeq/scope_graph.hpp"

namespace scopeq::cli {

enum class Mode { Generic, Specialized, BruteForce };

const char* mode_name(Mode m);

struct RunReport {
    Mode mode;
    std::vector<std::string> env;  ///< rendered paths, sorted
    ResolveStats stats;
    std::uint64_t wall_time_ns = 0;
};

struct SpecializeOptions {
    std::optional<bool> use_else;  ///< default: iff equiv is trivially true
    bool cse = true;
};

/// nullopt when the regex has the empty language (the query answers ∅).
std::optional<ir::StateMachine> compile_query(const Query& q, const SpecializeOptions& opts = {});

/// Runs one mode. `machine` overrides specialization in Specialized mode.
RunReport run_mode(Mode mode, const ScopeGraph& g, const Query& q,
                   const ir::StateMachine* machine = nullptr);

struct DiffOutcome {
    std::vector<RunReport> reports;  ///< generic, specialized variants, brute force
    std::vector<std::string> labels;
    bool agree = true;
};

/// Generic vs. brute force vs. every specialized variant (with/without
/// CSE; shadow and else forms when equiv is trivially true). With
/// `machine`, only that machine is used for the specialized side.
DiffOutcome diff_modes(const ScopeGraph& g, const Query& q,
                       const ir::StateMachine* machine = nullptr);

struct FuzzOptions {
    std::uint64_t seed = 42;
    std::size_t cases = 1000;
    std::size_t max_scopes = 12;
    std::size_t max_labels = 3;
    std::string repro_dir = "scopeq-repro";
    std::function<void(std::size_t, const ScopeGraph&, const Query&, const DiffOutcome&)> on_case;
};

struct FuzzResult {
    std::size_t cases_run = 0;
    std::optional<std::size_t> first_mismatch;
};

/// Stops at the first mismatch and writes graph.json/query.json there.
FuzzResult run_fuzz(const FuzzOptions& opts, std::ostream& log);

struct BenchRow {
    Mode mode;
    std::size_t iter;
    std::uint64_t wall_time_ns;
    ResolveStats stats;
};

struct FiveNumber {
    double min, q1, median, q3, max;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<double> speedups;  ///< generic / specialized, per iteration
    FiveNumber summary;
};

/// Quartiles by linear interpolation; `values` must be non-empty.
FiveNumber five_number(std::vector<double> values);

BenchReport run_bench(const ScopeGraph& g, const Query& q, std::size_t iters, std::size_t warmup);

void write_bench_csv(const BenchReport& report, std::ostream& out);

/// Entry point shared by the executable and the tests. Exit codes: 0 ok,
/// 1 semantic mismatch, 2 usage or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace scopeq::cli
