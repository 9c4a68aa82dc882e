#include "scopeq/specializer.hpp"

#include <map>

#include "scopeq/errors.hpp"

namespace scopeq {

ir::Expr compile_label(const PathLabel& label, const DfaState& state) {
    if (label.is_end()) {
        return ir::Expr::resolve();
    }
    auto it = state.transitions.find(label.label());
    if (it == state.transitions.end()) {
        throw Error("state " + state.name + " has no transition on " + label.to_string());
    }
    return ir::Expr::subenv(label.label(), it->second);
}

CodeBlock compile_shadowed(const LabelSet& smaller, const PathLabel& label,
                           const LabelOrder& order, FreshNamer& namer, const DfaState& state,
                           bool use_else) {
    if (smaller.empty()) {
        // shadow(∅, A) = A and else ∅ (E) = E
        CodeBlock out;
        out.result = namer.var();
        out.assignments.push_back({out.result, compile_label(label, state)});
        return out;
    }
    CodeBlock out = compile_labels(smaller, order, namer, state, use_else);
    const std::string local = out.result;
    if (use_else) {
        out.result = namer.var();
        out.assignments.push_back(
            {out.result, ir::Expr::otherwise(local, compile_label(label, state))});
        return out;
    }
    const std::string via_label = namer.var();
    out.assignments.push_back({via_label, compile_label(label, state)});
    out.result = namer.var();
    out.assignments.push_back({out.result, ir::Expr::shadow(local, via_label)});
    return out;
}

CodeBlock compile_labels(const LabelSet& labels, const LabelOrder& order, FreshNamer& namer,
                         const DfaState& state, bool use_else) {
    CodeBlock out;
    std::vector<std::string> parts;
    for (const PathLabel& l : max_set(labels, order)) {
        CodeBlock part =
            compile_shadowed(smaller_set(labels, l, order), l, order, namer, state, use_else);
        out.assignments.insert(out.assignments.end(), part.assignments.begin(),
                               part.assignments.end());
        parts.push_back(std::move(part.result));
    }
    out.result = namer.var();
    out.assignments.push_back({out.result, ir::Expr::merge(std::move(parts))});
    return out;
}

ir::State compile_state(const DfaState& state, const LabelOrder& order, bool use_else) {
    LabelSet labels;
    for (const Label& l : head_set(state.regex)) {
        labels.insert(l);
    }
    if (nullable(state.regex)) {
        labels.insert(PathLabel::end());
    }
    FreshNamer namer;
    CodeBlock block = compile_labels(labels, order, namer, state, use_else);
    return {std::move(block.assignments), std::move(block.result)};
}

ir::StateMachine specialize(const Regex& regex, const LabelOrder& order, bool use_else) {
    const Regex canonical = canonicalize(regex);
    if (canonical.is_empty()) {
        throw ValidationError("empty path well-formedness: regex matches no path");
    }
    std::vector<ir::NamedState> states;
    for (const DfaState& s : gen_states(canonical)) {
        states.push_back({s.name, compile_state(s, order, use_else)});
    }
    return ir::StateMachine(std::move(states));
}

ir::State eliminate_common_subenvs(const ir::State& state) {
    std::map<std::string, std::string> alias;
    auto rename = [&](const std::string& v) {
        auto it = alias.find(v);
        return it == alias.end() ? v : it->second;
    };

    std::vector<ir::Assignment> kept;
    const std::size_t n = state.assignments.size();
    for (std::size_t i = 0; i < n; ++i) {
        const ir::Assignment& a = state.assignments[i];
        ir::Expr e = a.expr.map_vars(rename);

        std::optional<std::string> replacement;
        if (e.kind() == ir::Expr::Kind::Merge && e.vars().size() == 1) {
            replacement = e.vars().front();
        } else {
            for (const ir::Assignment& earlier : kept) {
                if (earlier.expr == e) {
                    replacement = earlier.var;
                    break;
                }
            }
        }
        // The state's value is its last assignment, so the final assignment
        // may only go if its replacement is the new last one.
        const bool is_last = i + 1 == n;
        if (replacement && (!is_last || (!kept.empty() && kept.back().var == *replacement))) {
            alias[a.var] = *replacement;
            continue;
        }
        kept.push_back({a.var, std::move(e)});
    }

    if (kept.size() == n) {
        return state;
    }
    std::map<std::string, std::string> dense;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        dense[kept[i].var] = "e" + std::to_string(i);
    }
    auto renumber = [&](const std::string& v) { return dense.at(v); };
    ir::State out;
    for (const ir::Assignment& a : kept) {
        out.assignments.push_back({renumber(a.var), a.expr.map_vars(renumber)});
    }
    out.result = out.assignments.back().var;
    return out;
}

ir::StateMachine eliminate_common_subenvs(const ir::StateMachine& machine) {
    std::vector<ir::NamedState> states;
    for (const ir::NamedState& ns : machine.states()) {
        states.push_back({ns.name, eliminate_common_subenvs(ns.state)});
    }
    return ir::StateMachine(std::move(states));
}

} // namespace scopeq
