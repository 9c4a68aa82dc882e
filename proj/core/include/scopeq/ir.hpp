#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scopeq/label_regex.hpp"
#include "scopeq/query.hpp"
#include "scopeq/resolver.hpp"
#include "scopeq/scope_graph.hpp"

/// The resolution state-machine language: states are single-assignment
/// sequences over resolve/subenv/merge/shadow/else.
namespace scopeq::ir {

class Expr {
public:
    enum class Kind { Resolve, Subenv, Merge, Shadow, Else };

    static Expr resolve() { return Expr(Kind::Resolve); }
    static Expr subenv(Label label, std::string state);
    static Expr merge(std::vector<std::string> vars);
    static Expr shadow(std::string local, std::string candidates);
    /// `fallback` must not itself be an else expression (checked by validation).
    static Expr otherwise(std::string var, Expr fallback);

    Kind kind() const noexcept { return kind_; }
    const Label& label() const { return *label_; }
    const std::string& state() const noexcept { return state_; }
    /// Merge: all operands. Shadow: {local, candidates}. Else: {tested var}.
    const std::vector<std::string>& vars() const noexcept { return vars_; }
    const Expr& fallback() const { return *fallback_; }

    /// Every variable read, including those of an else fallback.
    std::vector<std::string> reads() const;

    /// Copy with every variable read passed through `rename`.
    template <typename F>
    Expr map_vars(F&& rename) const {
        Expr out = *this;
        for (std::string& v : out.vars_) {
            v = rename(v);
        }
        if (fallback_) {
            out.fallback_ = std::make_shared<const Expr>(fallback_->map_vars(rename));
        }
        return out;
    }

    std::string to_string() const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    explicit Expr(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::optional<Label> label_;
    std::string state_;
    std::vector<std::string> vars_;
    std::shared_ptr<const Expr> fallback_;
};

struct Assignment {
    std::string var;
    Expr expr;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct State {
    std::vector<Assignment> assignments;
    std::string result;

    friend bool operator==(const State&, const State&) = default;
};

struct NamedState {
    std::string name;
    State state;

    friend bool operator==(const NamedState&, const NamedState&) = default;
};

/// Ordered list of named states; the first one is initial.
class StateMachine {
public:
    StateMachine() = default;
    explicit StateMachine(std::vector<NamedState> states);

    const std::vector<NamedState>& states() const noexcept { return states_; }
    const NamedState& initial() const;
    /// nullptr when no state has that name.
    const State* find(std::string_view name) const;

    std::size_t assignment_count() const;

    friend bool operator==(const StateMachine& a, const StateMachine& b) {
        return a.states_ == b.states_;
    }

private:
    std::vector<NamedState> states_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

struct Diagnostic {
    std::string state;
    std::string message;
};

/// Checks single assignment, definition before use, result = last variable,
/// declared subenv targets, unique state names and non-nested else.
std::vector<Diagnostic> validate_machine(const StateMachine& m);

/// Machine text:
///   state machine
///     n0:
///       e0 := subenv L n1
///   ...
/// Throws ParseError with a 1-based line number.
StateMachine parse_machine(std::string_view text);
std::string print_machine(const StateMachine& m);

/// Write-once variable store for one state evaluation.
class EvalStore {
public:
    void bind(const std::string& var, Env env);
    /// Throws Error for an unbound variable.
    const Env& at(const std::string& var) const;

private:
    std::vector<std::pair<std::string, Env>> slots_;
};

struct EvalContext {
    const StateMachine& machine;
    const ScopeGraph& graph;
    const DataWf& wf;
    const DataEquiv& equiv;
    ResolveStats* stats = nullptr;
};

Env eval_expr(const Expr& e, const EvalStore& store, const EvalContext& ctx,
              const ResolutionPath& p);
Env eval_state(const State& y, const EvalContext& ctx, const ResolutionPath& p);

/// Evaluates the initial state at the 0-step path `start`. Throws
/// ValidationError for an invalid machine or an unknown scope.
Resolution run_machine(const StateMachine& m, const ScopeGraph& g, const ScopeId& start,
                       const DataWf& wf, const DataEquiv& equiv);

} // namespace scopeq::ir
