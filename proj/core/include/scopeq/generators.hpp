#pragma once

#include <cstdint>
#include <vector>

#include "scopeq/query.hpp"
#include "scopeq/scope_graph.hpp"

namespace scopeq {

/// Label alphabet of size `count`: P, I, VAR, then L3, L4, ...
std::vector<Label> default_labels(std::size_t count);

/// Seeded random graph with 1..max_scopes scopes. Combines a lexical
/// chain on the first label, imports on the second, declaration leaves
/// (named x/y/z) on the last, plus uniform noise edges.
ScopeGraph gen_random_graph(std::uint64_t seed, std::size_t max_scopes,
                            const std::vector<Label>& labels);

/// Seeded random query over `labels`: regex of size <= 8 built from
/// literals, concat, star, question and union; random acyclic order over
/// labels and `$`; wf any/name-eq; equiv true/same-name.
Query gen_random_query(std::uint64_t seed, const ScopeGraph& g, const std::vector<Label>& labels);

struct Instance {
    ScopeGraph graph;
    Query query;
};

/// Module-tree graph with roughly `scopes` scopes (modules with P/MOD edges,
/// VAR declarations, random imports) and the query `P* I? VAR` for `x` from
/// the deepest module.
Instance synthetic_lm(std::size_t scopes, std::uint64_t seed);

/// s0 -P-> s1 -P-> ... -P-> s<depth>, every scope declaring `x`, queried
/// from s0 with `P*` and `$ < P`.
Instance synthetic_chain(std::size_t depth);

} // namespace scopeq
