#include "scopeq/scope_graph.hpp"

#include <algorithm>

#include "json.hpp"
#include "scopeq/errors.hpp"

namespace scopeq {

ScopeId::ScopeId(std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
        throw ValidationError("scope id must be non-empty");
    }
}

Datum Datum::atom(std::string text) {
    if (text.empty()) {
        throw ValidationError("datum atom must be non-empty");
    }
    Datum d;
    d.kind_ = Kind::Atom;
    d.text_ = std::move(text);
    return d;
}

Datum Datum::tuple(std::vector<Datum> items) {
    Datum d;
    d.kind_ = Kind::Tuple;
    d.items_ = std::move(items);
    return d;
}

const std::string* Datum::name() const noexcept {
    if (kind_ == Kind::Atom) {
        return &text_;
    }
    if (kind_ == Kind::Tuple && !items_.empty() && items_.front().kind_ == Kind::Atom) {
        return &items_.front().text_;
    }
    return nullptr;
}

std::string Datum::to_string() const {
    switch (kind_) {
    case Kind::None: return "<none>";
    case Kind::Atom: return text_;
    case Kind::Tuple: {
        std::string out = "(";
        for (std::size_t i = 0; i < items_.size(); ++i) {
            if (i > 0) {
                out += ", ";
            }
            out += items_[i].to_string();
        }
        return out + ")";
    }
    }
    return {};
}

// ---------------------------------------------------------------------------

ScopeGraph::ScopeGraph(std::vector<ScopeId> scopes, std::vector<Edge> edges,
                       std::map<ScopeId, Datum> data)
    : scopes_(std::move(scopes)) {
    for (const ScopeId& s : scopes_) {
        if (!nodes_.try_emplace(s).second) {
            throw ValidationError("duplicate scope '" + s.name() + "'");
        }
    }
    for (const Edge& e : edges) {
        for (const ScopeId* end : {&e.src, &e.dst}) {
            if (!nodes_.contains(*end)) {
                throw ValidationError("edge " + e.src.name() + " -" + e.label.name() + "-> " +
                                      e.dst.name() + " references undeclared scope '" +
                                      end->name() + "'");
            }
        }
        auto& targets = nodes_.at(e.src).out[e.label];
        auto pos = std::lower_bound(targets.begin(), targets.end(), e.dst);
        if (pos == targets.end() || *pos != e.dst) {
            targets.insert(pos, e.dst);
            ++edge_count_;
        }
    }
    for (auto& [s, d] : data) {
        auto it = nodes_.find(s);
        if (it == nodes_.end()) {
            throw ValidationError("datum for undeclared scope '" + s.name() + "'");
        }
        it->second.datum = std::move(d);
    }
}

const ScopeGraph::Node& ScopeGraph::node(const ScopeId& s) const {
    auto it = nodes_.find(s);
    if (it == nodes_.end()) {
        throw ValidationError("unknown scope '" + s.name() + "'");
    }
    return it->second;
}

std::vector<Edge> ScopeGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (const auto& [src, n] : nodes_) {
        for (const auto& [l, targets] : n.out) {
            for (const ScopeId& dst : targets) {
                out.push_back({src, l, dst});
            }
        }
    }
    return out;
}

const std::vector<ScopeId>& ScopeGraph::targets(const ScopeId& s, const Label& l) const {
    static const std::vector<ScopeId> none;
    const Node& n = node(s);
    auto it = n.out.find(l);
    return it == n.out.end() ? none : it->second;
}

const Datum& ScopeGraph::datum_of(const ScopeId& s) const { return node(s).datum; }

bool operator==(const ScopeGraph& a, const ScopeGraph& b) {
    if (a.nodes_.size() != b.nodes_.size()) {
        return false;
    }
    return std::equal(a.nodes_.begin(), a.nodes_.end(), b.nodes_.begin(),
                      [](const auto& x, const auto& y) {
                          return x.first == y.first && x.second.datum == y.second.datum &&
                                 x.second.out == y.second.out;
                      });
}

// ---------------------------------------------------------------------------

bool ResolutionPath::contains(const ScopeId& s) const {
    if (start_ == s) {
        return true;
    }
    return std::any_of(steps_.begin(), steps_.end(),
                       [&](const auto& step) { return step.second == s; });
}

std::set<ScopeId> ResolutionPath::scopes() const {
    std::set<ScopeId> out{start_};
    for (const auto& step : steps_) {
        out.insert(step.second);
    }
    return out;
}

std::vector<Label> ResolutionPath::word() const {
    std::vector<Label> out;
    out.reserve(steps_.size());
    for (const auto& step : steps_) {
        out.push_back(step.first);
    }
    return out;
}

ResolutionPath ResolutionPath::append(const Label& l, const ScopeId& s) const {
    if (contains(s)) {
        throw ValidationError("cycle: scope '" + s.name() + "' already on path " + to_string());
    }
    ResolutionPath p = *this;
    p.steps_.emplace_back(l, s);
    return p;
}

std::string ResolutionPath::to_string() const {
    std::string out = start_.name();
    for (const auto& [l, s] : steps_) {
        out += " -" + l.name() + "-> " + s.name();
    }
    return out;
}

std::vector<std::string> render_env(const Env& env) {
    std::vector<std::string> out;
    out.reserve(env.size());
    for (const ResolutionPath& p : env) {
        out.push_back(p.to_string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

Datum datum_from_json(const json& j) {
    if (j.is_string()) {
        return Datum::atom(j.get<std::string>());
    }
    if (j.is_array()) {
        std::vector<Datum> items;
        for (const json& item : j) {
            items.push_back(datum_from_json(item));
        }
        return Datum::tuple(std::move(items));
    }
    if (j.is_null()) {
        return Datum::none();
    }
    throw ValidationError("datum must be a string or an array, got " + j.dump());
}

json datum_to_json(const Datum& d) {
    if (d.kind() == Datum::Kind::Atom) {
        return d.text();
    }
    json arr = json::array();
    for (const Datum& item : d.items()) {
        arr.push_back(datum_to_json(item));
    }
    return arr;
}

std::string require_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw ValidationError(std::string("edge field '") + key + "' must be a string");
    }
    return it->get<std::string>();
}

} // namespace

ScopeGraph load_graph(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed graph JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object()) {
        throw ValidationError("graph JSON must be an object");
    }
    std::vector<ScopeId> scopes;
    std::vector<Edge> edges;
    std::map<ScopeId, Datum> data;
    try {
        const json scope_list = j.value("scopes", json::array());
        const json edge_list = j.value("edges", json::array());
        const json data_map = j.value("data", json::object());
        for (const json& s : scope_list) {
            scopes.emplace_back(s.get<std::string>());
        }
        for (const json& e : edge_list) {
            edges.push_back({ScopeId(require_string(e, "src")), Label(require_string(e, "lbl")),
                             ScopeId(require_string(e, "dst"))});
        }
        for (const auto& [key, value] : data_map.items()) {
            data.emplace(ScopeId(key), datum_from_json(value));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed graph JSON: ") + e.what());
    }
    return ScopeGraph(std::move(scopes), std::move(edges), std::move(data));
}

std::string save_graph(const ScopeGraph& g) {
    json scopes = json::array();
    json data = json::object();
    for (const ScopeId& s : g.scopes()) {
        scopes.push_back(s.name());
        if (const Datum& d = g.datum_of(s); !d.is_none()) {
            data[s.name()] = datum_to_json(d);
        }
    }
    json edges = json::array();
    for (const Edge& e : g.edges()) {
        edges.push_back({{"src", e.src.name()}, {"lbl", e.label.name()}, {"dst", e.dst.name()}});
    }
    json out = {{"scopes", scopes}, {"edges", edges}, {"data", data}};
    return out.dump(2) + "\n";
}

} // namespace scopeq
