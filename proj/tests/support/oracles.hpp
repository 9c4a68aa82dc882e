#pragma once

// Test-only reference implementations. Nothing here calls into the
// derivative machinery of the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "scopeq/ir.hpp"
#include "scopeq/label_regex.hpp"
#include "scopeq/query.hpp"

namespace oracle {

using Word = std::vector<scopeq::Label>;
using Language = std::set<Word>;

// All words of L(r) with length <= max_len, by structural recursion.
inline Language words_upto(const scopeq::Regex& r, std::size_t max_len) {
    using K = scopeq::Regex::Kind;
    switch (r.kind()) {
    case K::Empty: return {};
    case K::Epsilon: return {Word{}};
    case K::Lit: return max_len >= 1 ? Language{Word{r.label()}} : Language{};
    case K::Question: {
        Language out = words_upto(r.operands()[0], max_len);
        out.insert(Word{});
        return out;
    }
    case K::Union: {
        Language out;
        for (const auto& op : r.operands()) {
            Language part = words_upto(op, max_len);
            out.insert(part.begin(), part.end());
        }
        return out;
    }
    case K::Concat: {
        Language a = words_upto(r.operands()[0], max_len);
        Language b = words_upto(r.operands()[1], max_len);
        Language out;
        for (const Word& x : a) {
            for (const Word& y : b) {
                if (x.size() + y.size() <= max_len) {
                    Word w = x;
                    w.insert(w.end(), y.begin(), y.end());
                    out.insert(std::move(w));
                }
            }
        }
        return out;
    }
    case K::Star: {
        Language inner = words_upto(r.operands()[0], max_len);
        Language out{Word{}};
        Language frontier{Word{}};
        while (!frontier.empty()) {
            Language next;
            for (const Word& x : frontier) {
                for (const Word& y : inner) {
                    if (y.empty() || x.size() + y.size() > max_len) {
                        continue;
                    }
                    Word w = x;
                    w.insert(w.end(), y.begin(), y.end());
                    if (out.insert(w).second) {
                        next.insert(std::move(w));
                    }
                }
            }
            frontier = std::move(next);
        }
        return out;
    }
    }
    return {};
}

inline std::vector<scopeq::Label> alphabet(std::size_t n) {
    static const char* const kNames[] = {"A", "B", "C", "D"};
    std::vector<scopeq::Label> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(kNames[i]);
    }
    return out;
}

inline scopeq::Regex random_regex(std::mt19937_64& rng, std::size_t size,
                                  const std::vector<scopeq::Label>& sigma) {
    using scopeq::Regex;
    auto pick = [&] { return Regex::lit(sigma[rng() % sigma.size()]); };
    if (size <= 1) {
        switch (rng() % 8) {
        case 0: return Regex::epsilon();
        case 1: return Regex::empty();
        default: return pick();
        }
    }
    switch (rng() % 5) {
    case 0: return Regex::star(random_regex(rng, size - 1, sigma));
    case 1: return Regex::question(random_regex(rng, size - 1, sigma));
    case 2: {
        std::size_t left = 1 + rng() % (size - 1);
        return Regex::alt(random_regex(rng, left, sigma),
                          random_regex(rng, std::max<std::size_t>(size - left, 1), sigma));
    }
    default: {
        std::size_t left = 1 + rng() % (size - 1);
        return Regex::concat(random_regex(rng, left, sigma),
                             random_regex(rng, std::max<std::size_t>(size - left, 1), sigma));
    }
    }
}

inline Word random_word(std::mt19937_64& rng, std::size_t max_len,
                        const std::vector<scopeq::Label>& sigma) {
    Word w(rng() % (max_len + 1), sigma.front());
    for (auto& l : w) {
        l = sigma[rng() % sigma.size()];
    }
    return w;
}

// a reaches c through generator edges
inline bool reaches(const std::set<scopeq::LabelPair>& gens, const scopeq::PathLabel& a,
                    const scopeq::PathLabel& c) {
    std::set<scopeq::PathLabel> seen;
    std::vector<scopeq::PathLabel> todo{a};
    while (!todo.empty()) {
        scopeq::PathLabel x = todo.back();
        todo.pop_back();
        for (const auto& [u, v] : gens) {
            if (u == x && seen.insert(v).second) {
                todo.push_back(v);
            }
        }
    }
    return seen.contains(c);
}

using Names = std::map<std::string, std::string>;

inline std::string alpha_expr(const scopeq::ir::Expr& e, const Names& states, const Names& vars) {
    using K = scopeq::ir::Expr::Kind;
    auto var = [&](const std::string& v) {
        auto it = vars.find(v);
        return it == vars.end() ? "?" + v : it->second;
    };
    switch (e.kind()) {
    case K::Resolve: return "resolve";
    case K::Subenv: {
        auto it = states.find(e.state());
        return "subenv " + e.label().name() + " " + (it == states.end() ? "?" + e.state() : it->second);
    }
    case K::Merge: {
        std::string out = "merge";
        for (const auto& v : e.vars()) {
            out += " " + var(v);
        }
        return out;
    }
    case K::Shadow: return "shadow " + var(e.vars()[0]) + " " + var(e.vars()[1]);
    case K::Else: return "else " + var(e.vars()[0]) + " (" + alpha_expr(e.fallback(), states, vars) + ")";
    }
    return {};
}

// States renamed s0.. in listing order, variables v0.. per state in
// assignment order. Equal strings mean alpha-equivalent machines.
inline std::string alpha_normal(const scopeq::ir::StateMachine& m) {
    Names states;
    for (const auto& ns : m.states()) {
        states.emplace(ns.name, "s" + std::to_string(states.size()));
    }
    std::string out;
    for (const auto& ns : m.states()) {
        Names vars;
        out += states.at(ns.name) + ":\n";
        for (const auto& a : ns.state.assignments) {
            std::string rhs = alpha_expr(a.expr, states, vars);
            vars.emplace(a.var, "v" + std::to_string(vars.size()));
            out += "  " + vars.at(a.var) + " := " + rhs + "\n";
        }
        out += "  -> " + (vars.contains(ns.state.result) ? vars.at(ns.state.result) : "?") + "\n";
    }
    return out;
}

} // namespace oracle
