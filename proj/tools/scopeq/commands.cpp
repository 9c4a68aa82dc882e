#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "scopeq/errors.hpp"
#include "scopeq/generators.hpp"
#include "scopeq/specializer.hpp"

namespace scopeq::cli {

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Generic: return "generic";
    case Mode::Specialized: return "specialized";
    case Mode::BruteForce: return "bruteforce";
    }
    return "?";
}

std::optional<ir::StateMachine> compile_query(const Query& q, const SpecializeOptions& opts) {
    if (q.regex.is_empty()) {
        return std::nullopt;
    }
    const bool use_else = opts.use_else.value_or(q.equiv.is_always_true());
    ir::StateMachine m = specialize(q.regex, q.order, use_else);
    return opts.cse ? eliminate_common_subenvs(m) : m;
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point since) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count());
}

RunReport run_specialized(const ScopeGraph& g, const Query& q, const ir::StateMachine* machine) {
    RunReport report{Mode::Specialized, {}, {}, 0};
    if (machine == nullptr && q.regex.is_empty()) {
        if (!g.has_scope(q.start)) {
            throw ValidationError("unknown start scope '" + q.start.name() + "'");
        }
        return report;
    }
    const auto t0 = Clock::now();
    Resolution r = ir::run_machine(*machine, g, q.start, q.wf, q.equiv);
    report.wall_time_ns = elapsed_ns(t0);
    report.env = render_env(r.env);
    report.stats = r.stats;
    return report;
}

} // namespace

RunReport run_mode(Mode mode, const ScopeGraph& g, const Query& q,
                   const ir::StateMachine* machine) {
    switch (mode) {
    case Mode::Generic: {
        const auto t0 = Clock::now();
        Resolution r = resolve(g, q);
        return {mode, render_env(r.env), r.stats, elapsed_ns(t0)};
    }
    case Mode::BruteForce: {
        const auto t0 = Clock::now();
        Env env = brute_force_resolve(g, q);
        return {mode, render_env(env), {}, elapsed_ns(t0)};
    }
    case Mode::Specialized: {
        if (machine != nullptr) {
            return run_specialized(g, q, machine);
        }
        std::optional<ir::StateMachine> m = compile_query(q);
        return run_specialized(g, q, m ? &*m : nullptr);
    }
    }
    throw Error("unknown mode");
}

DiffOutcome diff_modes(const ScopeGraph& g, const Query& q, const ir::StateMachine* machine) {
    DiffOutcome out;
    out.reports.push_back(run_mode(Mode::Generic, g, q));
    out.labels.emplace_back("generic");
    out.reports.push_back(run_mode(Mode::BruteForce, g, q));
    out.labels.emplace_back("bruteforce");

    if (machine != nullptr) {
        out.reports.push_back(run_mode(Mode::Specialized, g, q, machine));
        out.labels.emplace_back("specialized(--machine)");
    } else {
        std::vector<std::pair<std::string, SpecializeOptions>> variants = {
            {"specialized", {}},
            {"specialized(no-cse)", {std::nullopt, false}},
        };
        if (q.equiv.is_always_true()) {
            variants.push_back({"specialized(shadow)", {false, true}});
            variants.push_back({"specialized(shadow,no-cse)", {false, false}});
        }
        for (const auto& [label, opts] : variants) {
            std::optional<ir::StateMachine> m = compile_query(q, opts);
            out.reports.push_back(run_specialized(g, q, m ? &*m : nullptr));
            out.labels.push_back(label);
        }
    }
    for (const RunReport& r : out.reports) {
        if (r.env != out.reports.front().env) {
            out.agree = false;
        }
    }
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream f(path);
    if (!f) {
        throw Error("cannot write " + path.string());
    }
    f << contents;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw Error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void print_mismatch(const DiffOutcome& d, std::ostream& log) {
    for (std::size_t i = 0; i < d.reports.size(); ++i) {
        log << "  " << d.labels[i] << ": " << d.reports[i].env.size() << " path(s)\n";
        for (const std::string& p : d.reports[i].env) {
            log << "    " << p << "\n";
        }
    }
}

void dump_reproducer(const std::string& dir, const ScopeGraph& g, const Query& q,
                     std::ostream& log) {
    std::filesystem::create_directories(dir);
    const auto graph_path = std::filesystem::path(dir) / "graph.json";
    const auto query_path = std::filesystem::path(dir) / "query.json";
    write_file(graph_path, save_graph(g));
    write_file(query_path, save_query(q));
    log << "reproducer: " << graph_path.string() << " " << query_path.string() << "\n";
}

} // namespace

FuzzResult run_fuzz(const FuzzOptions& opts, std::ostream& log) {
    FuzzResult result;
    const std::vector<Label> labels = default_labels(std::max<std::size_t>(opts.max_labels, 1));
    for (std::size_t i = 0; i < opts.cases; ++i) {
        const std::uint64_t case_seed = opts.seed * 1000003ULL + i;
        ScopeGraph g = gen_random_graph(case_seed, opts.max_scopes, labels);
        Query q = gen_random_query(case_seed, g, labels);
        DiffOutcome d = diff_modes(g, q);
        ++result.cases_run;
        if (opts.on_case) {
            opts.on_case(i, g, q, d);
        }
        if (!d.agree) {
            result.first_mismatch = i;
            log << "case " << i << " (seed " << case_seed << "): modes disagree\n";
            print_mismatch(d, log);
            dump_reproducer(opts.repro_dir, g, q, log);
            return result;
        }
    }
    return result;
}

FiveNumber five_number(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    auto at = [&](double frac) {
        const double pos = frac * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    return {values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

BenchReport run_bench(const ScopeGraph& g, const Query& q, std::size_t iters, std::size_t warmup) {
    std::optional<ir::StateMachine> machine = compile_query(q);
    const ir::StateMachine* m = machine ? &*machine : nullptr;
    for (std::size_t i = 0; i < warmup; ++i) {
        run_mode(Mode::Generic, g, q);
        run_specialized(g, q, m);
    }
    BenchReport report;
    for (std::size_t i = 0; i < iters; ++i) {
        RunReport generic = run_mode(Mode::Generic, g, q);
        RunReport specialized = run_specialized(g, q, m);
        report.rows.push_back({Mode::Generic, i, generic.wall_time_ns, generic.stats});
        report.rows.push_back({Mode::Specialized, i, specialized.wall_time_ns, specialized.stats});
        const double denom = static_cast<double>(std::max<std::uint64_t>(specialized.wall_time_ns, 1));
        report.speedups.push_back(static_cast<double>(generic.wall_time_ns) / denom);
    }
    if (!report.speedups.empty()) {
        report.summary = five_number(report.speedups);
    }
    return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
    out << "mode,iter,wall_time_ns,derivative_count,order_query_count,edges_traversed,"
           "shadow_calls\n";
    for (const BenchRow& r : report.rows) {
        out << mode_name(r.mode) << ',' << r.iter << ',' << r.wall_time_ns << ','
            << r.stats.derivative_count << ',' << r.stats.order_query_count << ','
            << r.stats.edges_traversed << ',' << r.stats.shadow_calls << '\n';
    }
    const FiveNumber& s = report.summary;
    out << "speedup," << s.min << ',' << s.q1 << ',' << s.median << ',' << s.q3 << ',' << s.max
        << '\n';
}

// ---------------------------------------------------------------------------
// Command line

namespace {

nlohmann::json stats_json(const ResolveStats& s) {
    return {{"derivative_count", s.derivative_count},
            {"order_query_count", s.order_query_count},
            {"scopes_visited", s.scopes_visited},
            {"shadow_calls", s.shadow_calls},
            {"edges_traversed", s.edges_traversed}};
}

struct Inputs {
    std::string graph;
    std::string query;
};

int cmd_compile(const std::string& query_path, std::optional<bool> use_else, bool cse,
                const std::string& out_path, std::ostream& out) {
    Query q = load_query(read_file(query_path));
    std::optional<ir::StateMachine> m = compile_query(q, {use_else, cse});
    if (!m) {
        throw ValidationError("empty path well-formedness: regex '" + q.regex.to_string() +
                              "' matches no path");
    }
    const std::string text = ir::print_machine(*m);
    if (out_path.empty()) {
        out << text;
    } else {
        write_file(out_path, text);
    }
    return 0;
}

int cmd_resolve(const Inputs& in, const std::string& mode_text, bool as_json, std::ostream& out) {
    const ScopeGraph g = load_graph(read_file(in.graph));
    const Query q = load_query(read_file(in.query));
    Mode mode = Mode::Generic;
    if (mode_text == "specialized") {
        mode = Mode::Specialized;
    } else if (mode_text == "bruteforce") {
        mode = Mode::BruteForce;
    }
    const RunReport r = run_mode(mode, g, q);
    if (as_json) {
        nlohmann::json j = {{"mode", mode_name(r.mode)},
                            {"env", r.env},
                            {"stats", stats_json(r.stats)},
                            {"wall_time_ns", r.wall_time_ns}};
        out << j.dump(2) << "\n";
    } else {
        for (const std::string& p : r.env) {
            out << p << "\n";
        }
    }
    return 0;
}

int cmd_diff(const Inputs& in, const std::string& machine_path, const std::string& repro_dir,
             std::ostream& out, std::ostream& err) {
    const ScopeGraph g = load_graph(read_file(in.graph));
    const Query q = load_query(read_file(in.query));
    std::optional<ir::StateMachine> machine;
    if (!machine_path.empty()) {
        machine = ir::parse_machine(read_file(machine_path));
    }
    const DiffOutcome d = diff_modes(g, q, machine ? &*machine : nullptr);
    if (d.agree) {
        out << "ok: " << d.reports.size() << " runs agree on " << d.reports.front().env.size()
            << " path(s)\n";
        return 0;
    }
    err << "mismatch between resolution modes\n";
    print_mismatch(d, err);
    dump_reproducer(repro_dir, g, q, err);
    return 1;
}

int cmd_bench(const Inputs& in, std::size_t iters, std::size_t warmup, const std::string& csv_path,
              std::ostream& out) {
    const ScopeGraph g = load_graph(read_file(in.graph));
    const Query q = load_query(read_file(in.query));
    const BenchReport report = run_bench(g, q, iters, warmup);
    if (csv_path.empty()) {
        write_bench_csv(report, out);
    } else {
        std::ofstream f(csv_path);
        if (!f) {
            throw Error("cannot write " + csv_path);
        }
        write_bench_csv(report, f);
    }
    const FiveNumber& s = report.summary;
    out << "speedup (generic/specialized): min " << s.min << "  q1 " << s.q1 << "  median "
        << s.median << "  q3 " << s.q3 << "  max " << s.max << "\n";
    return 0;
}

int cmd_gen(const std::string& kind, std::size_t scopes, std::uint64_t seed,
            std::size_t max_labels, const Inputs& outputs, std::ostream& out) {
    std::optional<Instance> inst;
    if (kind == "lm") {
        inst = synthetic_lm(scopes, seed);
    } else if (kind == "chain") {
        inst = synthetic_chain(scopes);
    } else {
        const auto labels = default_labels(max_labels);
        ScopeGraph g = gen_random_graph(seed, scopes, labels);
        Query q = gen_random_query(seed, g, labels);
        inst = Instance{std::move(g), std::move(q)};
    }
    write_file(outputs.graph, save_graph(inst->graph));
    write_file(outputs.query, save_query(inst->query));
    out << "wrote " << outputs.graph << " (" << inst->graph.scopes().size() << " scopes, "
        << inst->graph.edge_count() << " edges) and " << outputs.query << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"scopeq: scope graph query resolution, specialization and testing"};
    app.require_subcommand(1);

    // compile
    std::string query_path, out_path;
    bool else_on = false, else_off = false, cse_off = false;
    auto* compile = app.add_subcommand("compile", "Specialize a query into a state machine");
    compile->add_option("query", query_path, "Query JSON file")->required();
    compile->add_flag("--else", else_on, "Use the else form for shadowing");
    compile->add_flag("--no-else", else_off, "Use shadow expressions");
    compile->add_flag("--no-cse", cse_off, "Skip common sub-environment elimination");
    compile->add_flag("--cse", "Run common sub-environment elimination (default)");
    compile->add_option("-o,--output", out_path, "Write the machine text here");

    // resolve
    Inputs in;
    std::string mode = "generic";
    bool as_json = false;
    auto* resolve_cmd = app.add_subcommand("resolve", "Resolve a query in a graph");
    resolve_cmd->add_option("graph", in.graph, "Graph JSON file")->required();
    resolve_cmd->add_option("query", in.query, "Query JSON file")->required();
    resolve_cmd->add_option("--mode", mode, "generic | specialized | bruteforce")
        ->check(CLI::IsMember({"generic", "specialized", "bruteforce"}));
    resolve_cmd->add_flag("--json", as_json, "Emit a JSON report with stats");

    // diff
    std::string machine_path, repro_dir = "scopeq-repro";
    auto* diff = app.add_subcommand("diff", "Compare all resolution modes on one input");
    diff->add_option("graph", in.graph, "Graph JSON file")->required();
    diff->add_option("query", in.query, "Query JSON file")->required();
    diff->add_option("--machine", machine_path, "Use this machine for the specialized side");
    diff->add_option("--repro-dir", repro_dir, "Where to write reproducers");

    // fuzz
    FuzzOptions fuzz_opts;
    auto* fuzz = app.add_subcommand("fuzz", "Differential testing on random instances");
    fuzz->add_option("--seed", fuzz_opts.seed, "Base seed");
    fuzz->add_option("--cases", fuzz_opts.cases, "Number of cases");
    fuzz->add_option("--max-scopes", fuzz_opts.max_scopes, "Maximum scopes per graph");
    fuzz->add_option("--max-labels", fuzz_opts.max_labels, "Label alphabet size");
    fuzz->add_option("--repro-dir", fuzz_opts.repro_dir, "Where to write reproducers");

    // bench
    std::size_t iters = 20, warmup = 3;
    std::string csv_path;
    auto* bench = app.add_subcommand("bench", "Time generic vs. specialized resolution");
    bench->add_option("graph", in.graph, "Graph JSON file")->required();
    bench->add_option("query", in.query, "Query JSON file")->required();
    bench->add_option("--iters", iters, "Timed iterations");
    bench->add_option("--warmup", warmup, "Warmup iterations");
    bench->add_option("--csv", csv_path, "CSV output file (default: stdout)");

    // gen
    std::string gen_kind = "lm";
    std::size_t gen_scopes = 2000, gen_labels = 3;
    std::uint64_t gen_seed = 1;
    Inputs gen_out{"graph.json", "query.json"};
    auto* gen = app.add_subcommand("gen", "Write a synthetic graph and query");
    gen->add_option("--kind", gen_kind, "lm | chain | random")
        ->check(CLI::IsMember({"lm", "chain", "random"}));
    gen->add_option("--scopes", gen_scopes, "Scope count (chain: depth)");
    gen->add_option("--seed", gen_seed, "Seed");
    gen->add_option("--max-labels", gen_labels, "Label alphabet size (random)");
    gen->add_option("--graph", gen_out.graph, "Graph output file");
    gen->add_option("--query", gen_out.query, "Query output file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*compile) {
            std::optional<bool> use_else;
            if (else_on || else_off) {
                use_else = else_on && !else_off;
            }
            return cmd_compile(query_path, use_else, !cse_off, out_path, out);
        }
        if (*resolve_cmd) {
            return cmd_resolve(in, mode, as_json, out);
        }
        if (*diff) {
            return cmd_diff(in, machine_path, repro_dir, out, err);
        }
        if (*fuzz) {
            FuzzResult r = run_fuzz(fuzz_opts, err);
            if (r.first_mismatch) {
                return 1;
            }
            out << "ok: " << r.cases_run << " cases, all modes agree\n";
            return 0;
        }
        if (*bench) {
            return cmd_bench(in, iters, warmup, csv_path, out);
        }
        if (*gen) {
            return cmd_gen(gen_kind, gen_scopes, gen_seed, gen_labels, gen_out, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace scopeq::cli
