#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "scopeq/query.hpp"
#include "scopeq/scope_graph.hpp"

#ifndef SCOPEQ_FIXTURES_DIR
#error "SCOPEQ_FIXTURES_DIR must be defined"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(SCOPEQ_FIXTURES_DIR) + "/" + name; }

inline std::string read(const std::string& name) {
    std::ifstream in(path(name), std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open fixture " + name);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline scopeq::ScopeGraph graph(const std::string& name) { return scopeq::load_graph(read(name)); }
inline scopeq::Query query(const std::string& name) { return scopeq::load_query(read(name)); }

} // namespace fixtures
