#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scopeq/label_regex.hpp"

namespace scopeq {

class ScopeId {
public:
    /// Throws ValidationError on an empty name.
    explicit ScopeId(std::string name);

    const std::string& name() const noexcept { return name_; }

    friend auto operator<=>(const ScopeId&, const ScopeId&) = default;
    friend bool operator==(const ScopeId&, const ScopeId&) = default;

private:
    std::string name_;
};

/// Data attached to a scope: nothing, a name atom, or a tuple of datums.
class Datum {
public:
    enum class Kind { None, Atom, Tuple };

    Datum() = default;
    static Datum none() { return Datum(); }
    /// Throws ValidationError on an empty atom.
    static Datum atom(std::string text);
    static Datum tuple(std::vector<Datum> items);

    Kind kind() const noexcept { return kind_; }
    bool is_none() const noexcept { return kind_ == Kind::None; }
    const std::string& text() const noexcept { return text_; }
    const std::vector<Datum>& items() const noexcept { return items_; }

    /// The atom itself, or the leading atom of a tuple; nullptr otherwise.
    const std::string* name() const noexcept;

    std::string to_string() const;

    friend bool operator==(const Datum&, const Datum&) = default;

private:
    Kind kind_ = Kind::None;
    std::string text_;
    std::vector<Datum> items_;
};

struct Edge {
    ScopeId src;
    Label label;
    ScopeId dst;

    friend auto operator<=>(const Edge&, const Edge&) = default;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable scope graph: scopes, labeled edges and a total datum map
/// (scopes without an explicit datum carry Datum::none()).
class ScopeGraph {
public:
    ScopeGraph() = default;

    /// Throws ValidationError on duplicate scopes or on edges/data that
    /// mention undeclared scopes. Duplicate edges collapse.
    ScopeGraph(std::vector<ScopeId> scopes, std::vector<Edge> edges,
               std::map<ScopeId, Datum> data = {});

    const std::vector<ScopeId>& scopes() const noexcept { return scopes_; }
    bool has_scope(const ScopeId& s) const { return nodes_.contains(s); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::vector<Edge> edges() const;

    /// Targets of `s`'s outgoing `l` edges, sorted by name.
    const std::vector<ScopeId>& targets(const ScopeId& s, const Label& l) const;
    const Datum& datum_of(const ScopeId& s) const;

    friend bool operator==(const ScopeGraph& a, const ScopeGraph& b);

private:
    struct Node {
        Datum datum;
        std::map<Label, std::vector<ScopeId>> out;
    };
    const Node& node(const ScopeId& s) const;

    std::vector<ScopeId> scopes_;
    std::map<ScopeId, Node> nodes_;
    std::size_t edge_count_ = 0;
};

/// Alternating scope/label sequence starting at a scope. Acyclic: no scope
/// occurs twice.
class ResolutionPath {
public:
    explicit ResolutionPath(ScopeId start) : start_(std::move(start)) {}

    const ScopeId& source() const noexcept { return start_; }
    const ScopeId& target() const noexcept {
        return steps_.empty() ? start_ : steps_.back().second;
    }
    const std::vector<std::pair<Label, ScopeId>>& steps() const noexcept { return steps_; }

    bool contains(const ScopeId& s) const;
    std::set<ScopeId> scopes() const;
    std::vector<Label> word() const;

    /// Throws ValidationError if `s` already occurs on the path.
    ResolutionPath append(const Label& l, const ScopeId& s) const;

    /// `start -L1-> s1 -L2-> s2 ...`
    std::string to_string() const;

    friend auto operator<=>(const ResolutionPath&, const ResolutionPath&) = default;
    friend bool operator==(const ResolutionPath&, const ResolutionPath&) = default;

private:
    ScopeId start_;
    std::vector<std::pair<Label, ScopeId>> steps_;
};

using Env = std::set<ResolutionPath>;

/// Rendered paths of `env`, sorted lexicographically.
std::vector<std::string> render_env(const Env& env);

/// Graph JSON: {"scopes":[...], "edges":[{"src","lbl","dst"}...], "data":{...}}.
/// Throws ParseError on malformed JSON and ValidationError on bad references.
ScopeGraph load_graph(std::string_view json);
std::string save_graph(const ScopeGraph& g);

} // namespace scopeq
