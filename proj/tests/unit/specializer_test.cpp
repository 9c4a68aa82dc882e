#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "scopeq/errors.hpp"
#include "scopeq/generators.hpp"
#include "scopeq/resolver.hpp"
#include "scopeq/specializer.hpp"

using namespace scopeq;
using namespace scopeq::ir;

namespace {

PathLabel pl(const char* s) { return PathLabel::parse(s); }

StateMachine compiled(const char* regex, std::vector<LabelPair> order, bool use_else) {
    return eliminate_common_subenvs(specialize(canonicalize(parse_regex(regex)),
                                               LabelOrder::from_pairs(std::move(order)), use_else));
}

std::string alpha(const char* text) { return oracle::alpha_normal(parse_machine(text)); }

std::string state_text(const State& y) {
    std::string out;
    for (const auto& a : y.assignments) {
        out += a.var + " := " + a.expr.to_string() + "\n";
    }
    return out;
}

const char* const kAvailableLeft = R"(state machine
  n:
    e0 := subenv L1 n
    e1 := subenv L2 n
    e2 := shadow e0 e1
    e3 := subenv L1 n
    e4 := subenv L3 n
    e5 := shadow e3 e4
    e6 := merge e2 e5
)";

const char* const kAvailableRight = R"(state machine
  n:
    e0 := subenv L1 n
    e1 := subenv L2 n
    e2 := shadow e0 e1
    e3 := subenv L3 n
    e4 := shadow e0 e3
    e5 := merge e2 e4
)";

} // namespace

TEST_CASE("compiled machine: single label") {
    const StateMachine m = compiled("L", {}, false);
    CHECK(oracle::alpha_normal(m) == alpha("state machine\n  n0:\n    e0 := subenv L n1\n  n1:\n    e0 := resolve\n"));
    CHECK(print_machine(m) == "state machine\n  n0:\n    e0 := subenv L n1\n  n1:\n    e0 := resolve\n");
}

TEST_CASE("compiled machine: star with merge") {
    const StateMachine m = compiled("L*", {}, false);
    CHECK(oracle::alpha_normal(m) == alpha(R"(state machine
  n0:
    e0 := resolve
    e1 := subenv L n0
    e2 := merge e0 e1
)"));
    // already minimal before the optimizer
    CHECK(specialize(parse_regex("L*"), {}, false) == m);
}

TEST_CASE("compiled machine: star with shadow") {
    const StateMachine m = compiled("L*", {{pl("$"), pl("L")}}, false);
    CHECK(oracle::alpha_normal(m) == alpha(R"(state machine
  n0:
    e0 := resolve
    e1 := subenv L n0
    e2 := shadow e0 e1
)"));
}

TEST_CASE("compiled machine: else variant") {
    const StateMachine m = compiled("L*", {{pl("$"), pl("L")}}, true);
    CHECK(oracle::alpha_normal(m) == alpha(R"(state machine
  n0:
    e0 := resolve
    e1 := else e0 (subenv L n0)
)"));
    REQUIRE(m.states().size() == 1);
    for (const auto& a : m.initial().state.assignments) {
        CHECK(a.expr.kind() != Expr::Kind::Shadow);
    }
}

TEST_CASE("compile_state before optimization") {
    const LabelOrder none;
    const auto eps = gen_states(Regex::epsilon());
    CHECK(state_text(compile_state(eps[0], none, false)) == "e0 := resolve\ne1 := merge e0\n");

    const auto var = gen_states(parse_regex("VAR"));
    CHECK(state_text(compile_state(var[0], none, false)) == "e0 := subenv VAR n1\ne1 := merge e0\n");

    const auto star = gen_states(parse_regex("L*"));
    CHECK(state_text(compile_state(star[0], none, false)) ==
          "e0 := resolve\ne1 := subenv L n0\ne2 := merge e0 e1\n");
}

TEST_CASE("compile_label") {
    const auto states = gen_states(parse_regex("A B"));
    CHECK(compile_label(PathLabel::end(), states[0]) == Expr::resolve());
    CHECK(compile_label(pl("A"), states[0]) == Expr::subenv(Label("A"), "n1"));
}

TEST_CASE("LM query compiles to three states") {
    const Query q = fixtures::query("lm_query.json");
    const StateMachine m = eliminate_common_subenvs(specialize(q.regex, q.order, true));
    CHECK(m.states().size() == 3);
    CHECK(validate_machine(m).empty());
    const ScopeGraph g = fixtures::graph("lm_graph.json");
    CHECK(run_machine(m, g, q.start, q.wf, q.equiv).env == resolve(g, q).env);
}

TEST_CASE("specialize rejects the empty language") {
    CHECK_THROWS_AS(specialize(Regex::empty(), {}, false), ValidationError);
}

TEST_CASE("available expressions: 7 assignments become 6") {
    const StateMachine left = parse_machine(kAvailableLeft);
    REQUIRE(left.assignment_count() == 7);
    const StateMachine right = eliminate_common_subenvs(left);
    CHECK(right.assignment_count() == 6);
    CHECK(print_machine(right) == kAvailableRight);
    CHECK(oracle::alpha_normal(right) == alpha(kAvailableRight));
}

TEST_CASE("optimizer leaves duplicate-free states alone and is idempotent") {
    const StateMachine right = parse_machine(kAvailableRight);
    CHECK(eliminate_common_subenvs(right) == right);
    const StateMachine once = eliminate_common_subenvs(parse_machine(kAvailableLeft));
    CHECK(eliminate_common_subenvs(once) == once);
}

TEST_CASE("property: specialized resolution matches generic resolution") {
    const auto labels = default_labels(3);
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const ScopeGraph g = gen_random_graph(seed, 12, labels);
        const Query q = gen_random_query(seed, g, labels);
        if (q.regex.is_empty()) {
            continue;
        }
        CAPTURE(seed);
        const Env expected = resolve(g, q).env;
        std::vector<bool> else_modes{false};
        if (q.equiv.is_always_true()) {
            else_modes.push_back(true);
        }
        for (bool use_else : else_modes) {
            const StateMachine raw = specialize(q.regex, q.order, use_else);
            const StateMachine opt = eliminate_common_subenvs(raw);
            CHECK(validate_machine(raw).empty());
            CHECK(validate_machine(opt).empty());
            CHECK(opt.assignment_count() <= raw.assignment_count());
            CHECK(eliminate_common_subenvs(opt) == opt);
            CHECK(parse_machine(print_machine(opt)) == opt);
            for (const StateMachine* m : {&raw, &opt}) {
                const Resolution r = run_machine(*m, g, q.start, q.wf, q.equiv);
                CHECK(r.env == expected);
                CHECK(r.stats.derivative_count == 0);
                CHECK(r.stats.order_query_count == 0);
            }
        }
    }
}
