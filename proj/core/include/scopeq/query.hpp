#pragma once

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scopeq/label_regex.hpp"
#include "scopeq/scope_graph.hpp"

namespace scopeq {

using LabelSet = std::set<PathLabel>;
using LabelPair = std::pair<PathLabel, PathLabel>;

/// Strict partial order over path labels, given by generator pairs `a < b`
/// and closed transitively.
class LabelOrder {
public:
    LabelOrder() = default;

    /// Closes `pairs` transitively. Throws ValidationError if the closure is
    /// not irreflexive.
    static LabelOrder from_pairs(std::vector<LabelPair> pairs);

    bool less(const PathLabel& a, const PathLabel& b) const {
        return closure_.contains({a, b});
    }

    const std::set<LabelPair>& generators() const noexcept { return generators_; }
    const std::set<LabelPair>& closure() const noexcept { return closure_; }

private:
    std::set<LabelPair> generators_;
    std::set<LabelPair> closure_;
};

/// Labels of `labels` with no greater label in `labels`.
LabelSet max_set(const LabelSet& labels, const LabelOrder& order);
/// Labels of `labels` strictly below `pivot`.
LabelSet smaller_set(const LabelSet& labels, const PathLabel& pivot, const LabelOrder& order);

/// Data well-formedness predicate.
class DataWf {
public:
    enum class Kind { Any, NameEq, HasDatum, Custom };
    using Hook = std::function<bool(const Datum&)>;

    static DataWf any() { return DataWf(Kind::Any); }
    static DataWf name_eq(std::string atom);
    static DataWf has_datum() { return DataWf(Kind::HasDatum); }
    /// Programmatic predicate; not serializable.
    static DataWf custom(Hook hook);

    Kind kind() const noexcept { return kind_; }
    const std::string& atom() const noexcept { return atom_; }

    bool operator()(const Datum& d) const;

private:
    explicit DataWf(Kind kind) : kind_(kind) {}
    Kind kind_;
    std::string atom_;
    Hook hook_;
};

/// Data equivalence used for shadowing.
class DataEquiv {
public:
    enum class Kind { AlwaysTrue, SameName, Custom };
    using Hook = std::function<bool(const Datum&, const Datum&)>;

    static DataEquiv always_true() { return DataEquiv(Kind::AlwaysTrue); }
    static DataEquiv same_name() { return DataEquiv(Kind::SameName); }
    static DataEquiv custom(Hook hook);

    Kind kind() const noexcept { return kind_; }
    bool is_always_true() const noexcept { return kind_ == Kind::AlwaysTrue; }

    bool operator()(const Datum& a, const Datum& b) const;

private:
    explicit DataEquiv(Kind kind) : kind_(kind) {}
    Kind kind_;
    Hook hook_;
};

inline bool wf_eval(const DataWf& wf, const Datum& d) { return wf(d); }
inline bool equiv_eval(const DataEquiv& eq, const Datum& a, const Datum& b) { return eq(a, b); }

struct Query {
    ScopeId start;
    Regex regex;  ///< canonical
    DataWf wf;
    LabelOrder order;
    DataEquiv equiv;
};

/// Canonicalizes `regex` and rejects `$` outside the order.
Query make_query(ScopeId start, const Regex& regex, DataWf wf, LabelOrder order, DataEquiv equiv);

/// Query JSON:
///   {"start":"sE", "regex":"P* I? VAR", "wf":{"kind":"name-eq","atom":"x"},
///    "order":[["VAR","P"],["VAR","I"]], "equiv":{"kind":"true"}}
Query load_query(std::string_view json);
/// Throws Error for custom predicates.
std::string save_query(const Query& q);

} // namespace scopeq
