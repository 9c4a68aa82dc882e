#pragma once

#include <cstdint>

#include "scopeq/query.hpp"
#include "scopeq/scope_graph.hpp"

namespace scopeq {

/// Work counters collected during one resolution.
struct ResolveStats {
    std::uint64_t derivative_count = 0;
    std::uint64_t order_query_count = 0;  ///< max_set + smaller_set evaluations
    std::uint64_t scopes_visited = 0;
    std::uint64_t shadow_calls = 0;
    std::uint64_t edges_traversed = 0;

    friend bool operator==(const ResolveStats&, const ResolveStats&) = default;
};

struct Resolution {
    Env env;
    ResolveStats stats;
};

/// Generic resolution: interprets the query's regex and label order at every
/// visited scope. Throws ValidationError if the start scope is unknown.
Resolution resolve(const ScopeGraph& g, const Query& q);

/// Keeps the paths of `local` plus every path of `candidates` whose target
/// datum is not equivalent to the target datum of some path in `local`.
Env shadow(const ScopeGraph& g, const DataEquiv& equiv, const Env& local, const Env& candidates);

/// Shadowing order on paths from the same start: after the longest common
/// prefix, compares the next label of each (or `$` when exhausted).
/// Throws ValidationError when the start scopes differ.
bool path_less(const ResolutionPath& a, const ResolutionPath& b, const LabelOrder& order);

/// Reference resolution by enumeration: every acyclic matching path, filtered
/// by data well-formedness, minus the paths shadowed under `path_less`.
Env brute_force_resolve(const ScopeGraph& g, const Query& q);

} // namespace scopeq
