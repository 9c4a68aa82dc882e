#include "scopeq/ir.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "scopeq/errors.hpp"

namespace scopeq::ir {

Expr Expr::subenv(Label label, std::string state) {
    Expr e(Kind::Subenv);
    e.label_ = std::move(label);
    e.state_ = std::move(state);
    return e;
}

Expr Expr::merge(std::vector<std::string> vars) {
    Expr e(Kind::Merge);
    e.vars_ = std::move(vars);
    return e;
}

Expr Expr::shadow(std::string local, std::string candidates) {
    Expr e(Kind::Shadow);
    e.vars_ = {std::move(local), std::move(candidates)};
    return e;
}

Expr Expr::otherwise(std::string var, Expr fallback) {
    Expr e(Kind::Else);
    e.vars_ = {std::move(var)};
    e.fallback_ = std::make_shared<const Expr>(std::move(fallback));
    return e;
}

std::vector<std::string> Expr::reads() const {
    std::vector<std::string> out = vars_;
    if (fallback_) {
        auto more = fallback_->reads();
        out.insert(out.end(), more.begin(), more.end());
    }
    return out;
}

std::string Expr::to_string() const {
    switch (kind_) {
    case Kind::Resolve: return "resolve";
    case Kind::Subenv: return "subenv " + label_->name() + " " + state_;
    case Kind::Merge: {
        std::string out = "merge";
        for (const std::string& v : vars_) {
            out += " " + v;
        }
        return out;
    }
    case Kind::Shadow: return "shadow " + vars_[0] + " " + vars_[1];
    case Kind::Else: return "else " + vars_[0] + " (" + fallback_->to_string() + ")";
    }
    return {};
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind_ != b.kind_ || a.label_ != b.label_ || a.state_ != b.state_ || a.vars_ != b.vars_) {
        return false;
    }
    if (a.fallback_ && b.fallback_) {
        return *a.fallback_ == *b.fallback_;
    }
    return a.fallback_ == b.fallback_;
}

// ---------------------------------------------------------------------------

StateMachine::StateMachine(std::vector<NamedState> states) : states_(std::move(states)) {
    for (std::size_t i = 0; i < states_.size(); ++i) {
        index_.try_emplace(states_[i].name, i);
    }
}

const NamedState& StateMachine::initial() const {
    if (states_.empty()) {
        throw ValidationError("state machine has no states");
    }
    return states_.front();
}

const State* StateMachine::find(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &states_[it->second].state;
}

std::size_t StateMachine::assignment_count() const {
    std::size_t n = 0;
    for (const NamedState& s : states_) {
        n += s.state.assignments.size();
    }
    return n;
}

namespace {

void check_expr(const Expr& e, const StateMachine& m, const std::set<std::string>& defined,
                const std::string& var, bool nested, std::vector<std::string>& problems) {
    for (const std::string& read : e.vars()) {
        if (!defined.contains(read)) {
            problems.push_back(var + " reads unassigned variable " + read);
        }
    }
    switch (e.kind()) {
    case Expr::Kind::Subenv:
        if (m.find(e.state()) == nullptr) {
            problems.push_back(var + " targets undeclared state " + e.state());
        }
        break;
    case Expr::Kind::Shadow:
        if (e.vars().size() != 2) {
            problems.push_back(var + " shadow needs two operands");
        }
        break;
    case Expr::Kind::Else:
        if (nested) {
            problems.push_back(var + " nests else inside else");
        }
        check_expr(e.fallback(), m, defined, var, true, problems);
        break;
    default: break;
    }
}

} // namespace

std::vector<Diagnostic> validate_machine(const StateMachine& m) {
    std::vector<Diagnostic> out;
    if (m.states().empty()) {
        out.push_back({"", "state machine has no states"});
        return out;
    }
    std::set<std::string> names;
    for (const NamedState& ns : m.states()) {
        if (!names.insert(ns.name).second) {
            out.push_back({ns.name, "duplicate state name"});
        }
        const State& y = ns.state;
        if (y.assignments.empty()) {
            out.push_back({ns.name, "state has no assignments"});
            continue;
        }
        std::set<std::string> defined;
        for (const Assignment& a : y.assignments) {
            std::vector<std::string> problems;
            check_expr(a.expr, m, defined, a.var, false, problems);
            for (std::string& p : problems) {
                out.push_back({ns.name, std::move(p)});
            }
            if (!defined.insert(a.var).second) {
                out.push_back({ns.name, a.var + " is assigned twice"});
            }
        }
        if (y.result != y.assignments.back().var) {
            out.push_back({ns.name, "result " + y.result + " is not the last assigned variable " +
                                        y.assignments.back().var});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_name(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t line) : line_(line) {
        std::string current;
        for (char c : text) {
            if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
                if (!current.empty()) {
                    tokens_.push_back(std::move(current));
                    current.clear();
                }
                if (c == '(' || c == ')') {
                    tokens_.emplace_back(1, c);
                }
            } else {
                current += c;
            }
        }
        if (!current.empty()) {
            tokens_.push_back(std::move(current));
        }
    }

    Expr parse_all() {
        Expr e = parse();
        if (pos_ != tokens_.size()) {
            fail("unexpected '" + tokens_[pos_] + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("line " + std::to_string(line_) + ": " + msg, line_);
    }

    std::string next_name(const char* what) {
        if (pos_ >= tokens_.size() || !is_name(tokens_[pos_])) {
            fail(std::string("expected ") + what);
        }
        return tokens_[pos_++];
    }

    Expr parse() {
        const std::string head = next_name("expression");
        if (head == "resolve") {
            return Expr::resolve();
        }
        if (head == "subenv") {
            std::string label = next_name("label");
            if (!Label::is_valid(label)) {
                fail("invalid label '" + label + "'");
            }
            return Expr::subenv(Label(std::move(label)), next_name("state name"));
        }
        if (head == "merge") {
            std::vector<std::string> vars;
            while (pos_ < tokens_.size() && is_name(tokens_[pos_])) {
                vars.push_back(tokens_[pos_++]);
            }
            return Expr::merge(std::move(vars));
        }
        if (head == "shadow") {
            std::string a = next_name("variable");
            return Expr::shadow(std::move(a), next_name("variable"));
        }
        if (head == "else") {
            std::string var = next_name("variable");
            if (pos_ >= tokens_.size() || tokens_[pos_] != "(") {
                fail("expected '(' after else variable");
            }
            ++pos_;
            Expr fallback = parse();
            if (pos_ >= tokens_.size() || tokens_[pos_] != ")") {
                fail("expected ')'");
            }
            ++pos_;
            return Expr::otherwise(std::move(var), std::move(fallback));
        }
        fail("unknown expression '" + head + "'");
    }

    std::vector<std::string> tokens_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

} // namespace

StateMachine parse_machine(std::string_view text) {
    std::vector<NamedState> states;
    bool seen_header = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        const std::string_view line = trim(text.substr(start, end - start));
        start = end + 1;
        if (line.empty()) {
            continue;
        }
        if (!seen_header) {
            if (line != "state machine") {
                throw ParseError("line " + std::to_string(line_no) + ": expected 'state machine'",
                                 line_no);
            }
            seen_header = true;
            continue;
        }
        if (line.back() == ':') {
            const std::string_view name = trim(line.substr(0, line.size() - 1));
            if (!is_name(name)) {
                throw ParseError("line " + std::to_string(line_no) + ": invalid state name",
                                 line_no);
            }
            states.push_back({std::string(name), {}});
            continue;
        }
        const auto assign = line.find(":=");
        if (assign == std::string_view::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'VAR := expr'",
                             line_no);
        }
        if (states.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": assignment outside a state",
                             line_no);
        }
        const std::string_view var = trim(line.substr(0, assign));
        if (!is_name(var)) {
            throw ParseError("line " + std::to_string(line_no) + ": invalid variable", line_no);
        }
        Expr e = ExprParser(line.substr(assign + 2), line_no).parse_all();
        State& y = states.back().state;
        y.assignments.push_back({std::string(var), std::move(e)});
        y.result = std::string(var);
    }
    if (!seen_header) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'state machine'",
                         line_no);
    }
    return StateMachine(std::move(states));
}

std::string print_machine(const StateMachine& m) {
    std::ostringstream out;
    out << "state machine\n";
    for (const NamedState& ns : m.states()) {
        out << "  " << ns.name << ":\n";
        for (const Assignment& a : ns.state.assignments) {
            out << "    " << a.var << " := " << a.expr.to_string() << "\n";
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Interpreter

void EvalStore::bind(const std::string& var, Env env) {
    for (const auto& slot : slots_) {
        if (slot.first == var) {
            throw Error("variable " + var + " assigned twice");
        }
    }
    slots_.emplace_back(var, std::move(env));
}

const Env& EvalStore::at(const std::string& var) const {
    for (const auto& slot : slots_) {
        if (slot.first == var) {
            return slot.second;
        }
    }
    throw Error("read of unassigned variable " + var);
}

Env eval_expr(const Expr& e, const EvalStore& store, const EvalContext& ctx,
              const ResolutionPath& p) {
    switch (e.kind()) {
    case Expr::Kind::Resolve:
        if (ctx.wf(ctx.graph.datum_of(p.target()))) {
            return Env{p};
        }
        return {};
    case Expr::Kind::Subenv: {
        const State* next = ctx.machine.find(e.state());
        if (next == nullptr) {
            throw Error("subenv targets undefined state " + e.state());
        }
        Env out;
        for (const ScopeId& s : ctx.graph.targets(p.target(), e.label())) {
            if (p.contains(s)) {
                continue;
            }
            if (ctx.stats != nullptr) {
                ++ctx.stats->edges_traversed;
            }
            Env part = eval_state(*next, ctx, p.append(e.label(), s));
            out.insert(part.begin(), part.end());
        }
        return out;
    }
    case Expr::Kind::Merge: {
        Env out;
        for (const std::string& v : e.vars()) {
            const Env& part = store.at(v);
            out.insert(part.begin(), part.end());
        }
        return out;
    }
    case Expr::Kind::Shadow:
        if (ctx.stats != nullptr) {
            ++ctx.stats->shadow_calls;
        }
        return shadow(ctx.graph, ctx.equiv, store.at(e.vars()[0]), store.at(e.vars()[1]));
    case Expr::Kind::Else: {
        const Env& first = store.at(e.vars()[0]);
        if (!first.empty()) {
            return first;
        }
        return eval_expr(e.fallback(), store, ctx, p);
    }
    }
    return {};
}

Env eval_state(const State& y, const EvalContext& ctx, const ResolutionPath& p) {
    if (ctx.stats != nullptr) {
        ++ctx.stats->scopes_visited;
    }
    EvalStore store;
    const Env* last = nullptr;
    for (const Assignment& a : y.assignments) {
        store.bind(a.var, eval_expr(a.expr, store, ctx, p));
        last = &store.at(a.var);
    }
    return last == nullptr ? Env{} : *last;
}

Resolution run_machine(const StateMachine& m, const ScopeGraph& g, const ScopeId& start,
                       const DataWf& wf, const DataEquiv& equiv) {
    if (auto diags = validate_machine(m); !diags.empty()) {
        std::string msg = "invalid state machine:";
        for (const Diagnostic& d : diags) {
            msg += "\n  " + d.state + ": " + d.message;
        }
        throw ValidationError(msg);
    }
    if (!g.has_scope(start)) {
        throw ValidationError("unknown start scope '" + start.name() + "'");
    }
    Resolution r;
    const EvalContext ctx{m, g, wf, equiv, &r.stats};
    r.env = eval_state(m.initial().state, ctx, ResolutionPath(start));
    return r;
}

} // namespace scopeq::ir
