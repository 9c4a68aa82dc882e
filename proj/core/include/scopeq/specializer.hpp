#pragma once

#include <string>
#include <vector>

#include "scopeq/ir.hpp"
#include "scopeq/label_regex.hpp"
#include "scopeq/query.hpp"

namespace scopeq {

/// Hands out e0, e1, ... within one compiled state.
class FreshNamer {
public:
    std::string var() { return "e" + std::to_string(next_var_++); }

private:
    int next_var_ = 0;
};

/// Assignments computing an environment, and the variable holding it.
struct CodeBlock {
    std::vector<ir::Assignment> assignments;
    std::string result;
};

/// `resolve` for `$`, otherwise `subenv l n` with n the automaton successor.
ir::Expr compile_label(const PathLabel& label, const DfaState& state);

/// Environment of `label` shadowed by the environment of `smaller`. With
/// `use_else` the shadow becomes `else x_L (...)`. An empty `smaller` emits
/// the label expression alone.
CodeBlock compile_shadowed(const LabelSet& smaller, const PathLabel& label,
                           const LabelOrder& order, FreshNamer& namer, const DfaState& state,
                           bool use_else);

/// One shadowed block per maximal label, joined by a trailing merge.
CodeBlock compile_labels(const LabelSet& labels, const LabelOrder& order, FreshNamer& namer,
                         const DfaState& state, bool use_else);

ir::State compile_state(const DfaState& state, const LabelOrder& order, bool use_else);

/// Partially evaluates resolution with respect to (regex, order). Pass
/// `use_else` only when the data equivalence is trivially true. Throws
/// ValidationError for a regex with the empty language.
ir::StateMachine specialize(const Regex& regex, const LabelOrder& order, bool use_else);

/// Forward available-expression pass: drops assignments whose expression
/// repeats an earlier one, aliases single-operand merges, and rewrites later
/// reads. Variables are renumbered e0.. when anything was removed.
ir::State eliminate_common_subenvs(const ir::State& state);
ir::StateMachine eliminate_common_subenvs(const ir::StateMachine& machine);

} // namespace scopeq
