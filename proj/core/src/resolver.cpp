#include "scopeq/resolver.hpp"

#include <algorithm>

#include "scopeq/errors.hpp"

namespace scopeq {

Env shadow(const ScopeGraph& g, const DataEquiv& equiv, const Env& local, const Env& candidates) {
    Env out = local;
    for (const ResolutionPath& p : candidates) {
        const Datum& d = g.datum_of(p.target());
        const bool shadowed = std::any_of(local.begin(), local.end(), [&](const ResolutionPath& q) {
            return equiv(g.datum_of(q.target()), d);
        });
        if (!shadowed) {
            out.insert(p);
        }
    }
    return out;
}

namespace {

/// The mutually recursive functions of the generic algorithm, sharing the
/// query parameters and one stats accumulator.
class GenericResolver {
public:
    GenericResolver(const ScopeGraph& g, const Query& q) : g_(g), q_(q) {}

    Env resolve_all(const ResolutionPath& p, const Regex& re) {
        ++stats_.scopes_visited;
        LabelSet labels;
        for (const Label& l : head_set(re)) {
            labels.insert(l);
        }
        if (nullable(re)) {
            labels.insert(PathLabel::end());
        }
        return resolve_labels(p, labels, re);
    }

    ResolveStats stats() const { return stats_; }

private:
    Env resolve_labels(const ResolutionPath& p, const LabelSet& labels, const Regex& re) {
        Env out;
        if (labels.empty()) {
            return out;
        }
        ++stats_.order_query_count;
        for (const PathLabel& l : max_set(labels, q_.order)) {
            ++stats_.order_query_count;
            Env part = resolve_shadowed(p, smaller_set(labels, l, q_.order), l, re);
            out.insert(part.begin(), part.end());
        }
        return out;
    }

    Env resolve_shadowed(const ResolutionPath& p, const LabelSet& smaller, const PathLabel& l,
                         const Regex& re) {
        Env local = resolve_labels(p, smaller, re);
        Env via_label = resolve_one(p, l, re);
        ++stats_.shadow_calls;
        return shadow(g_, q_.equiv, local, via_label);
    }

    Env resolve_one(const ResolutionPath& p, const PathLabel& l, const Regex& re) {
        if (l.is_end()) {
            return resolve_end(p);
        }
        return resolve_edge(p, l.label(), re);
    }

    Env resolve_end(const ResolutionPath& p) {
        if (q_.wf(g_.datum_of(p.target()))) {
            return Env{p};
        }
        return {};
    }

    Env resolve_edge(const ResolutionPath& p, const Label& l, const Regex& re) {
        Env out;
        for (const ScopeId& next : g_.targets(p.target(), l)) {
            if (p.contains(next)) {
                continue;
            }
            ++stats_.edges_traversed;
            ++stats_.derivative_count;
            Env part = resolve_all(p.append(l, next), derive(l, re));
            out.insert(part.begin(), part.end());
        }
        return out;
    }

    const ScopeGraph& g_;
    const Query& q_;
    ResolveStats stats_;
};

} // namespace

Resolution resolve(const ScopeGraph& g, const Query& q) {
    if (!g.has_scope(q.start)) {
        throw ValidationError("unknown start scope '" + q.start.name() + "'");
    }
    GenericResolver r(g, q);
    Env env = r.resolve_all(ResolutionPath(q.start), q.regex);
    return {std::move(env), r.stats()};
}

bool path_less(const ResolutionPath& a, const ResolutionPath& b, const LabelOrder& order) {
    if (a.source() != b.source()) {
        throw ValidationError("paths start at different scopes: " + a.source().name() + " and " +
                              b.source().name());
    }
    const auto& sa = a.steps();
    const auto& sb = b.steps();
    std::size_t i = 0;
    while (i < sa.size() && i < sb.size() && sa[i] == sb[i]) {
        ++i;
    }
    const PathLabel la = i < sa.size() ? PathLabel(sa[i].first) : PathLabel::end();
    const PathLabel lb = i < sb.size() ? PathLabel(sb[i].first) : PathLabel::end();
    return order.less(la, lb);
}

namespace {

void enumerate_paths(const ScopeGraph& g, const Query& q, const ResolutionPath& p,
                     const Regex& residual, std::vector<ResolutionPath>& out) {
    const std::vector<Label> word = p.word();
    if (matches_word(q.regex, word)) {
        out.push_back(p);
    }
    for (const Label& l : labels_of(residual)) {
        const Regex next_residual = derive(l, residual);
        if (next_residual.is_empty()) {
            continue;
        }
        for (const ScopeId& next : g.targets(p.target(), l)) {
            if (!p.contains(next)) {
                enumerate_paths(g, q, p.append(l, next), next_residual, out);
            }
        }
    }
}

} // namespace

Env brute_force_resolve(const ScopeGraph& g, const Query& q) {
    if (!g.has_scope(q.start)) {
        throw ValidationError("unknown start scope '" + q.start.name() + "'");
    }
    std::vector<ResolutionPath> matching;
    enumerate_paths(g, q, ResolutionPath(q.start), q.regex, matching);

    std::vector<ResolutionPath> valid;
    for (ResolutionPath& p : matching) {
        if (q.wf(g.datum_of(p.target()))) {
            valid.push_back(std::move(p));
        }
    }

    Env out;
    for (const ResolutionPath& p : valid) {
        const Datum& d = g.datum_of(p.target());
        const bool shadowed = std::any_of(valid.begin(), valid.end(), [&](const ResolutionPath& o) {
            return path_less(o, p, q.order) && q.equiv(g.datum_of(o.target()), d);
        });
        if (!shadowed) {
            out.insert(p);
        }
    }
    return out;
}

} // namespace scopeq
