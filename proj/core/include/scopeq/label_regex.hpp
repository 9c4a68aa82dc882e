#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scopeq {

/// An edge label such as `P`, `I`, `VAR` or `MOD`.
class Label {
public:
    /// Throws ValidationError unless `name` matches `[A-Za-z][A-Za-z0-9_]*`.
    explicit Label(std::string name);

    static bool is_valid(std::string_view name) noexcept;

    const std::string& name() const noexcept { return name_; }

    friend auto operator<=>(const Label&, const Label&) = default;
    friend bool operator==(const Label&, const Label&) = default;

private:
    std::string name_;
};

/// A path label: either an edge label or the end-of-path marker `$`.
/// The end marker orders before every edge label.
class PathLabel {
public:
    PathLabel(Label label) : label_(std::move(label)) {}  // NOLINT: implicit by intent

    static PathLabel end() { return PathLabel(); }
    /// Accepts "$" or a valid label name.
    static PathLabel parse(std::string_view text);

    bool is_end() const noexcept { return !label_.has_value(); }
    const Label& label() const;
    std::string to_string() const { return label_ ? label_->name() : std::string("$"); }

    friend auto operator<=>(const PathLabel&, const PathLabel&) = default;
    friend bool operator==(const PathLabel&, const PathLabel&) = default;

private:
    PathLabel() = default;
    std::optional<Label> label_;
};

/// Immutable regular expression over edge labels. Copies share structure.
///
/// The raw constructors build exactly the requested tree; `canonicalize`
/// normalizes it. Union nodes may have more than two operands once
/// canonicalized (ACI flattening).
class Regex {
public:
    enum class Kind { Empty, Epsilon, Lit, Star, Concat, Union, Question };

    static Regex empty();
    static Regex epsilon();
    static Regex lit(Label label);
    static Regex star(Regex inner);
    static Regex question(Regex inner);
    static Regex concat(Regex left, Regex right);
    static Regex alt(Regex left, Regex right);
    static Regex alt(std::vector<Regex> operands);

    Kind kind() const noexcept;
    bool is_empty() const noexcept { return kind() == Kind::Empty; }

    /// Only valid for Lit.
    const Label& label() const;
    /// Star/Question: one operand. Concat: two. Union: two or more.
    std::span<const Regex> operands() const noexcept;

    /// Renders with minimal parentheses; `parse_regex` accepts the output.
    std::string to_string() const;

    /// Total structural order: constructor rank, then labels/operands
    /// lexicographically.
    friend std::strong_ordering operator<=>(const Regex& a, const Regex& b);
    friend bool operator==(const Regex& a, const Regex& b) { return (a <=> b) == 0; }

private:
    struct Node;
    explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Parses the textual regex grammar:
///   regex := concat ('|' concat)* ; concat := postfix+ ;
///   postfix := atom ('*'|'?')* ; atom := LABEL | 'e' | '0' | '(' regex ')'
/// Throws ParseError carrying the byte offset of the offending token.
Regex parse_regex(std::string_view text);

bool nullable(const Regex& r);

/// Bottom-up normalization to the canonical form (ACI unions without Empty
/// operands, right-associated concatenation, ε/∅ units, star collapsing,
/// no Question nodes). The empty language is canonical only as Empty.
Regex canonicalize(const Regex& r);

/// Canonical Brzozowski derivative of `r` with respect to `l`.
Regex derive(const Label& l, const Regex& r);

/// Every label occurring syntactically in `r`.
std::set<Label> labels_of(const Regex& r);

/// Labels whose derivative is non-empty.
std::set<Label> head_set(const Regex& r);

/// Direct word membership by splitting; shares no code with `derive`.
bool matches_word(const Regex& r, std::span<const Label> word);

/// One state of the derivative automaton.
struct DfaState {
    std::string name;
    Regex regex;
    std::map<Label, std::string> transitions;
};

/// Expands `r` into its derivative automaton. Element 0 is the initial state
/// (regex canonicalize(r)); states are named n0, n1, ... in breadth-first
/// discovery order and deduplicated by canonical regex. Throws Error if
/// more than `state_limit` states are discovered.
std::vector<DfaState> gen_states(const Regex& r, std::size_t state_limit = 10000);

} // namespace scopeq
