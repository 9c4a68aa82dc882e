#include "scopeq/query.hpp"

#include "json.hpp"
#include "scopeq/errors.hpp"

namespace scopeq {

LabelOrder LabelOrder::from_pairs(std::vector<LabelPair> pairs) {
    LabelOrder order;
    order.generators_.insert(pairs.begin(), pairs.end());

    std::set<PathLabel> nodes;
    for (const auto& [a, b] : order.generators_) {
        nodes.insert(a);
        nodes.insert(b);
    }
    std::set<LabelPair> closure = order.generators_;
    // Warshall over the (small) set of participating labels.
    for (const PathLabel& k : nodes) {
        for (const PathLabel& i : nodes) {
            if (!closure.contains({i, k})) {
                continue;
            }
            for (const PathLabel& j : nodes) {
                if (closure.contains({k, j})) {
                    closure.insert({i, j});
                }
            }
        }
    }
    for (const PathLabel& n : nodes) {
        if (closure.contains({n, n})) {
            throw ValidationError("label order is cyclic through '" + n.to_string() + "'");
        }
    }
    order.closure_ = std::move(closure);
    return order;
}

LabelSet max_set(const LabelSet& labels, const LabelOrder& order) {
    LabelSet out;
    for (const PathLabel& l : labels) {
        bool dominated = false;
        for (const PathLabel& other : labels) {
            if (order.less(l, other)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            out.insert(l);
        }
    }
    return out;
}

LabelSet smaller_set(const LabelSet& labels, const PathLabel& pivot, const LabelOrder& order) {
    LabelSet out;
    for (const PathLabel& l : labels) {
        if (order.less(l, pivot)) {
            out.insert(l);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

DataWf DataWf::name_eq(std::string atom) {
    if (atom.empty()) {
        throw ValidationError("name-eq needs a non-empty atom");
    }
    DataWf wf(Kind::NameEq);
    wf.atom_ = std::move(atom);
    return wf;
}

DataWf DataWf::custom(Hook hook) {
    DataWf wf(Kind::Custom);
    wf.hook_ = std::move(hook);
    return wf;
}

bool DataWf::operator()(const Datum& d) const {
    switch (kind_) {
    case Kind::Any: return true;
    case Kind::HasDatum: return !d.is_none();
    case Kind::NameEq: {
        const std::string* name = d.name();
        return name != nullptr && *name == atom_;
    }
    case Kind::Custom: return hook_(d);
    }
    return false;
}

DataEquiv DataEquiv::custom(Hook hook) {
    DataEquiv eq(Kind::Custom);
    eq.hook_ = std::move(hook);
    return eq;
}

bool DataEquiv::operator()(const Datum& a, const Datum& b) const {
    switch (kind_) {
    case Kind::AlwaysTrue: return true;
    case Kind::SameName: {
        if (a.is_none() || b.is_none()) {
            return false;
        }
        const std::string* na = a.name();
        const std::string* nb = b.name();
        return na != nullptr && nb != nullptr && *na == *nb;
    }
    case Kind::Custom: return hook_(a, b);
    }
    return false;
}

// ---------------------------------------------------------------------------

Query make_query(ScopeId start, const Regex& regex, DataWf wf, LabelOrder order,
                 DataEquiv equiv) {
    return Query{std::move(start), canonicalize(regex), std::move(wf), std::move(order),
                 std::move(equiv)};
}

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ValidationError(std::string("query is missing '") + key + "'");
    }
    return *it;
}

DataWf wf_from_json(const json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "any") {
        return DataWf::any();
    }
    if (kind == "has-datum") {
        return DataWf::has_datum();
    }
    if (kind == "name-eq") {
        return DataWf::name_eq(field(j, "atom").get<std::string>());
    }
    throw ValidationError("unknown wf kind '" + kind + "'");
}

DataEquiv equiv_from_json(const json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "true") {
        return DataEquiv::always_true();
    }
    if (kind == "same-name") {
        return DataEquiv::same_name();
    }
    throw ValidationError("unknown equiv kind '" + kind + "'");
}

} // namespace

Query load_query(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed query JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object()) {
        throw ValidationError("query JSON must be an object");
    }
    try {
        std::vector<LabelPair> pairs;
        const json order = j.value("order", json::array());
        for (const json& pair : order) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ValidationError("order entries must be [smaller, larger] pairs");
            }
            pairs.emplace_back(PathLabel::parse(pair[0].get<std::string>()),
                               PathLabel::parse(pair[1].get<std::string>()));
        }
        const json wf = j.value("wf", json{{"kind", "any"}});
        const json equiv = j.value("equiv", json{{"kind", "true"}});
        return make_query(ScopeId(field(j, "start").get<std::string>()),
                          parse_regex(field(j, "regex").get<std::string>()), wf_from_json(wf),
                          LabelOrder::from_pairs(std::move(pairs)), equiv_from_json(equiv));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed query JSON: ") + e.what());
    }
}

std::string save_query(const Query& q) {
    json wf;
    switch (q.wf.kind()) {
    case DataWf::Kind::Any: wf = {{"kind", "any"}}; break;
    case DataWf::Kind::HasDatum: wf = {{"kind", "has-datum"}}; break;
    case DataWf::Kind::NameEq: wf = {{"kind", "name-eq"}, {"atom", q.wf.atom()}}; break;
    case DataWf::Kind::Custom: throw Error("custom data well-formedness is not serializable");
    }
    json equiv;
    switch (q.equiv.kind()) {
    case DataEquiv::Kind::AlwaysTrue: equiv = {{"kind", "true"}}; break;
    case DataEquiv::Kind::SameName: equiv = {{"kind", "same-name"}}; break;
    case DataEquiv::Kind::Custom: throw Error("custom data equivalence is not serializable");
    }
    json order = json::array();
    for (const auto& [a, b] : q.order.generators()) {
        order.push_back({a.to_string(), b.to_string()});
    }
    json out = {{"start", q.start.name()}, {"regex", q.regex.to_string()},
                {"wf", wf},                {"order", order},
                {"equiv", equiv}};
    return out.dump(2) + "\n";
}

} // namespace scopeq
