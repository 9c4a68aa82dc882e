#include "scopeq/generators.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace scopeq {

namespace {

/// Thin wrapper so that draws do not depend on library distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
    bool chance(unsigned percent) { return below(100) < percent; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 engine_;
};

const std::vector<std::string> kNames = {"x", "y", "z"};

ScopeId scope(std::size_t i) { return ScopeId("s" + std::to_string(i)); }

Regex random_regex(Rng& rng, std::size_t size, const std::vector<Label>& labels) {
    if (size <= 1) {
        return Regex::lit(rng.pick(labels));
    }
    if (size == 2) {
        Regex inner = Regex::lit(rng.pick(labels));
        return rng.chance(50) ? Regex::star(inner) : Regex::question(inner);
    }
    switch (rng.below(4)) {
    case 0: return Regex::star(random_regex(rng, size - 1, labels));
    case 1: return Regex::question(random_regex(rng, size - 1, labels));
    default: {
        const std::size_t left = 1 + rng.below(size - 2);
        Regex a = random_regex(rng, left, labels);
        Regex b = random_regex(rng, size - 1 - left, labels);
        return rng.chance(65) ? Regex::concat(a, b) : Regex::alt(a, b);
    }
    }
}

} // namespace

std::vector<Label> default_labels(std::size_t count) {
    static const char* const kBase[] = {"P", "I", "VAR"};
    std::vector<Label> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.emplace_back(i < 3 ? std::string(kBase[i]) : "L" + std::to_string(i));
    }
    return out;
}

ScopeGraph gen_random_graph(std::uint64_t seed, std::size_t max_scopes,
                            const std::vector<Label>& labels) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.below(std::max<std::size_t>(max_scopes, 1));
    std::vector<ScopeId> scopes;
    for (std::size_t i = 0; i < n; ++i) {
        scopes.push_back(scope(i));
    }
    std::vector<Edge> edges;
    std::map<ScopeId, Datum> data;
    if (n == 1 || labels.empty()) {
        if (rng.chance(50)) {
            data.emplace(scopes[0], Datum::atom(rng.pick(kNames)));
        }
        return ScopeGraph(std::move(scopes), std::move(edges), std::move(data));
    }

    const Label& lexical = labels.front();
    const Label& import = labels.size() > 1 ? labels[1] : labels.front();
    const Label& decl = labels.back();

    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t parent = rng.below(i);
        if (rng.chance(35)) {
            // declaration leaf hanging off an earlier scope
            edges.push_back({scopes[parent], decl, scopes[i]});
            const std::string& name = rng.pick(kNames);
            data.emplace(scopes[i], rng.chance(50) ? Datum::atom(name)
                                                   : Datum::tuple({Datum::atom(name),
                                                                   Datum::atom("T")}));
            continue;
        }
        edges.push_back({scopes[i], lexical, scopes[parent]});
        if (rng.chance(25)) {
            edges.push_back({scopes[i], import, scopes[rng.below(n)]});
        }
        if (rng.chance(20)) {
            data.emplace(scopes[i], Datum::atom(rng.pick(kNames)));
        }
    }
    const std::size_t noise = rng.below(n / 2 + 1);
    for (std::size_t k = 0; k < noise; ++k) {
        const std::size_t a = rng.below(n);
        const std::size_t b = rng.below(n);
        if (a != b) {
            edges.push_back({scopes[a], rng.pick(labels), scopes[b]});
        }
    }
    // Drop self loops introduced by the import motif.
    std::erase_if(edges, [](const Edge& e) { return e.src == e.dst; });
    return ScopeGraph(std::move(scopes), std::move(edges), std::move(data));
}

Query gen_random_query(std::uint64_t seed, const ScopeGraph& g, const std::vector<Label>& labels) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    Regex regex = random_regex(rng, 1 + rng.below(8), labels);

    // Orders are sampled consistently with a random permutation, so their
    // closure is always irreflexive.
    std::vector<PathLabel> universe(labels.begin(), labels.end());
    universe.push_back(PathLabel::end());
    for (std::size_t i = universe.size(); i > 1; --i) {
        std::swap(universe[i - 1], universe[rng.below(i)]);
    }
    std::vector<LabelPair> pairs;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        for (std::size_t j = i + 1; j < universe.size(); ++j) {
            if (rng.chance(35)) {
                pairs.emplace_back(universe[i], universe[j]);
            }
        }
    }

    DataWf wf = rng.chance(30) ? DataWf::any() : DataWf::name_eq(rng.pick(kNames));
    DataEquiv equiv = rng.chance(50) ? DataEquiv::always_true() : DataEquiv::same_name();
    ScopeId start = g.scopes().empty() ? ScopeId("s0") : g.scopes()[rng.below(g.scopes().size())];
    return make_query(std::move(start), regex, std::move(wf),
                      LabelOrder::from_pairs(std::move(pairs)), std::move(equiv));
}

Instance synthetic_lm(std::size_t scopes, std::uint64_t seed) {
    Rng rng(seed);
    const Label P("P"), I("I"), VAR("VAR"), MOD("MOD");
    static const std::vector<std::string> kDeclNames = {"x", "y", "z", "u", "v", "w"};

    std::vector<ScopeId> ids{ScopeId("s")};
    std::vector<Edge> edges;
    std::map<ScopeId, Datum> data;
    std::vector<std::size_t> modules{0};  // indices into ids
    std::vector<std::size_t> depth{0};    // per module

    const std::size_t target = std::max<std::size_t>(scopes, 4);
    while (ids.size() < target) {
        const std::size_t m = modules.size();
        // Parent among the most recent modules yields deep nesting.
        const std::size_t lo = m > 4 ? m - 4 : 0;
        const std::size_t parent = lo + rng.below(m - lo);
        ScopeId mod("m" + std::to_string(m));
        ids.push_back(mod);
        modules.push_back(ids.size() - 1);
        depth.push_back(depth[parent] + 1);
        const ScopeId& parent_id = ids[modules[parent]];
        edges.push_back({parent_id, MOD, mod});
        edges.push_back({mod, P, parent_id});
        data.emplace(mod, Datum::atom("M" + std::to_string(m)));
        if (m > 1 && rng.chance(40)) {
            edges.push_back({mod, I, ids[modules[1 + rng.below(m - 1)]]});
        }
        const std::size_t decls = 1 + rng.below(2);
        for (std::size_t d = 0; d < decls && ids.size() < target; ++d) {
            ScopeId decl("d" + std::to_string(ids.size()));
            ids.push_back(decl);
            edges.push_back({mod, VAR, decl});
            data.emplace(decl, Datum::tuple({Datum::atom(rng.pick(kDeclNames)),
                                             Datum::atom("Int")}));
        }
    }
    const auto deepest = static_cast<std::size_t>(
        std::max_element(depth.begin(), depth.end()) - depth.begin());
    ScopeId start = ids[modules[deepest]];
    ScopeGraph g(std::move(ids), std::move(edges), std::move(data));
    Query q = make_query(std::move(start), parse_regex("P* I? VAR"), DataWf::name_eq("x"),
                         LabelOrder::from_pairs({{VAR, P}, {VAR, I}}), DataEquiv::always_true());
    return {std::move(g), std::move(q)};
}

Instance synthetic_chain(std::size_t depth) {
    const Label P("P");
    std::vector<ScopeId> ids;
    std::vector<Edge> edges;
    std::map<ScopeId, Datum> data;
    for (std::size_t i = 0; i <= depth; ++i) {
        ids.push_back(scope(i));
        data.emplace(ids.back(), Datum::atom("x"));
        if (i > 0) {
            edges.push_back({ids[i - 1], P, ids[i]});
        }
    }
    ScopeGraph g(std::move(ids), std::move(edges), std::move(data));
    Query q = make_query(scope(0), parse_regex("P*"), DataWf::name_eq("x"),
                         LabelOrder::from_pairs({{PathLabel::end(), P}}), DataEquiv::always_true());
    return {std::move(g), std::move(q)};
}

} // namespace scopeq
