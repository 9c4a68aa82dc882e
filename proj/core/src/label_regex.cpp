#include "scopeq/label_regex.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "scopeq/errors.hpp"

namespace scopeq {

// ---------------------------------------------------------------------------
// Labels

bool Label::is_valid(std::string_view name) noexcept {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

Label::Label(std::string name) : name_(std::move(name)) {
    if (!is_valid(name_)) {
        throw ValidationError("invalid label '" + name_ + "'");
    }
}

PathLabel PathLabel::parse(std::string_view text) {
    if (text == "$") {
        return end();
    }
    return PathLabel(Label(std::string(text)));
}

const Label& PathLabel::label() const {
    if (!label_) {
        throw Error("end-of-path label has no edge label");
    }
    return *label_;
}

// ---------------------------------------------------------------------------
// Regex nodes

struct Regex::Node {
    Kind kind;
    std::optional<Label> label;
    std::vector<Regex> operands;
};

namespace {

int rank(Regex::Kind k) {
    switch (k) {
    case Regex::Kind::Empty: return 0;
    case Regex::Kind::Epsilon: return 1;
    case Regex::Kind::Lit: return 2;
    case Regex::Kind::Star: return 3;
    case Regex::Kind::Concat: return 4;
    case Regex::Kind::Union: return 5;
    case Regex::Kind::Question: return 6;
    }
    return 7;
}

} // namespace

Regex Regex::empty() {
    static const Regex r(std::make_shared<const Node>(Node{Kind::Empty, std::nullopt, {}}));
    return r;
}

Regex Regex::epsilon() {
    static const Regex r(std::make_shared<const Node>(Node{Kind::Epsilon, std::nullopt, {}}));
    return r;
}

Regex Regex::lit(Label label) {
    return Regex(std::make_shared<const Node>(Node{Kind::Lit, std::move(label), {}}));
}

Regex Regex::star(Regex inner) {
    return Regex(std::make_shared<const Node>(Node{Kind::Star, std::nullopt, {std::move(inner)}}));
}

Regex Regex::question(Regex inner) {
    return Regex(
        std::make_shared<const Node>(Node{Kind::Question, std::nullopt, {std::move(inner)}}));
}

Regex Regex::concat(Regex left, Regex right) {
    return Regex(std::make_shared<const Node>(
        Node{Kind::Concat, std::nullopt, {std::move(left), std::move(right)}}));
}

Regex Regex::alt(Regex left, Regex right) {
    return alt(std::vector<Regex>{std::move(left), std::move(right)});
}

Regex Regex::alt(std::vector<Regex> operands) {
    if (operands.size() < 2) {
        throw Error("union needs at least two operands");
    }
    return Regex(std::make_shared<const Node>(Node{Kind::Union, std::nullopt, std::move(operands)}));
}

Regex::Kind Regex::kind() const noexcept { return node_->kind; }

const Label& Regex::label() const {
    if (node_->kind != Kind::Lit) {
        throw Error("regex is not a literal");
    }
    return *node_->label;
}

std::span<const Regex> Regex::operands() const noexcept { return node_->operands; }

std::strong_ordering operator<=>(const Regex& a, const Regex& b) {
    if (a.node_ == b.node_) {
        return std::strong_ordering::equal;
    }
    if (auto c = rank(a.kind()) <=> rank(b.kind()); c != 0) {
        return c;
    }
    if (a.kind() == Regex::Kind::Lit) {
        return a.label() <=> b.label();
    }
    auto lhs = a.operands();
    auto rhs = b.operands();
    return std::lexicographical_compare_three_way(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

namespace {

// Precedence levels: 0 union, 1 concat, 2 postfix/atom.
int precedence(const Regex& r) {
    switch (r.kind()) {
    case Regex::Kind::Union: return 0;
    case Regex::Kind::Concat: return 1;
    default: return 2;
    }
}

void render(const Regex& r, int context, std::string& out) {
    const bool parens = precedence(r) < context;
    if (parens) {
        out += '(';
    }
    switch (r.kind()) {
    case Regex::Kind::Empty: out += '0'; break;
    case Regex::Kind::Epsilon: out += 'e'; break;
    case Regex::Kind::Lit: out += r.label().name(); break;
    case Regex::Kind::Star:
    case Regex::Kind::Question: {
        const Regex& inner = r.operands()[0];
        // A postfix operand must be an atom or another postfix node.
        render(inner, 2, out);
        out += r.kind() == Regex::Kind::Star ? '*' : '?';
        break;
    }
    case Regex::Kind::Concat:
        render(r.operands()[0], 1, out);
        out += ' ';
        render(r.operands()[1], 1, out);
        break;
    case Regex::Kind::Union: {
        bool first = true;
        for (const Regex& op : r.operands()) {
            if (!first) {
                out += " | ";
            }
            first = false;
            render(op, 0, out);
        }
        break;
    }
    }
    if (parens) {
        out += ')';
    }
}

} // namespace

std::string Regex::to_string() const {
    std::string out;
    render(*this, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Eps, Zero, Bar, Star, Quest, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            std::string word(text.substr(i, j - i));
            out.push_back({word == "e" ? Tok::Eps : Tok::Ident, word, i});
            i = j;
            continue;
        }
        Tok kind;
        switch (c) {
        case '0': kind = Tok::Zero; break;
        case '|': kind = Tok::Bar; break;
        case '*': kind = Tok::Star; break;
        case '?': kind = Tok::Quest; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        default:
            throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " +
                                 std::to_string(i),
                             i);
        }
        out.push_back({kind, std::string(1, c), i});
        ++i;
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

class RegexParser {
public:
    explicit RegexParser(std::string_view text) : tokens_(tokenize(text)) {}

    Regex parse() {
        Regex r = parse_union();
        if (peek().kind != Tok::End) {
            fail("unexpected '" + peek().text + "'");
        }
        return r;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(peek().offset), peek().offset);
    }

    static bool starts_atom(Tok t) {
        return t == Tok::Ident || t == Tok::Eps || t == Tok::Zero || t == Tok::LParen;
    }

    Regex parse_union() {
        Regex r = parse_concat();
        while (peek().kind == Tok::Bar) {
            ++pos_;
            r = Regex::alt(r, parse_concat());
        }
        return r;
    }

    Regex parse_concat() {
        if (!starts_atom(peek().kind)) {
            fail(peek().kind == Tok::End ? "unexpected end of regex" : "expected atom");
        }
        Regex r = parse_postfix();
        while (starts_atom(peek().kind)) {
            r = Regex::concat(r, parse_postfix());
        }
        return r;
    }

    Regex parse_postfix() {
        Regex r = parse_atom();
        for (;;) {
            if (peek().kind == Tok::Star) {
                r = Regex::star(r);
            } else if (peek().kind == Tok::Quest) {
                r = Regex::question(r);
            } else {
                return r;
            }
            ++pos_;
        }
    }

    Regex parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Ident: ++pos_; return Regex::lit(Label(t.text));
        case Tok::Eps: ++pos_; return Regex::epsilon();
        case Tok::Zero: ++pos_; return Regex::empty();
        case Tok::LParen: {
            ++pos_;
            Regex r = parse_union();
            if (peek().kind != Tok::RParen) {
                fail("expected ')'");
            }
            ++pos_;
            return r;
        }
        default: fail("expected atom");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

Regex parse_regex(std::string_view text) { return RegexParser(text).parse(); }

// ---------------------------------------------------------------------------
// Core operations

bool nullable(const Regex& r) {
    switch (r.kind()) {
    case Regex::Kind::Empty:
    case Regex::Kind::Lit: return false;
    case Regex::Kind::Epsilon:
    case Regex::Kind::Star:
    case Regex::Kind::Question: return true;
    case Regex::Kind::Concat:
        return nullable(r.operands()[0]) && nullable(r.operands()[1]);
    case Regex::Kind::Union:
        return std::any_of(r.operands().begin(), r.operands().end(),
                           [](const Regex& op) { return nullable(op); });
    }
    return false;
}

namespace {

// Smart constructors. Each assumes canonical operands and returns a
// canonical result.

Regex mk_union(std::vector<Regex> ops) {
    std::vector<Regex> flat;
    for (Regex& op : ops) {
        if (op.kind() == Regex::Kind::Union) {
            flat.insert(flat.end(), op.operands().begin(), op.operands().end());
        } else if (!op.is_empty()) {
            flat.push_back(std::move(op));
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) {
        return Regex::empty();
    }
    if (flat.size() == 1) {
        return flat.front();
    }
    return Regex::alt(std::move(flat));
}

Regex mk_concat(const Regex& a, const Regex& b) {
    if (a.is_empty() || b.is_empty()) {
        return Regex::empty();
    }
    if (a.kind() == Regex::Kind::Epsilon) {
        return b;
    }
    if (b.kind() == Regex::Kind::Epsilon) {
        return a;
    }
    if (a.kind() == Regex::Kind::Concat) {
        return mk_concat(a.operands()[0], mk_concat(a.operands()[1], b));
    }
    return Regex::concat(a, b);
}

Regex mk_star(const Regex& a) {
    switch (a.kind()) {
    case Regex::Kind::Empty:
    case Regex::Kind::Epsilon: return Regex::epsilon();
    case Regex::Kind::Star: return a;
    default: return Regex::star(a);
    }
}

// Brzozowski derivative over canonical input, built with smart constructors.
Regex derive_canonical(const Label& l, const Regex& r) {
    switch (r.kind()) {
    case Regex::Kind::Empty:
    case Regex::Kind::Epsilon: return Regex::empty();
    case Regex::Kind::Lit: return r.label() == l ? Regex::epsilon() : Regex::empty();
    case Regex::Kind::Star: return mk_concat(derive_canonical(l, r.operands()[0]), r);
    case Regex::Kind::Question: return derive_canonical(l, r.operands()[0]);
    case Regex::Kind::Concat: {
        const Regex& head = r.operands()[0];
        const Regex& tail = r.operands()[1];
        Regex d = mk_concat(derive_canonical(l, head), tail);
        if (!nullable(head)) {
            return d;
        }
        return mk_union({std::move(d), derive_canonical(l, tail)});
    }
    case Regex::Kind::Union: {
        std::vector<Regex> parts;
        parts.reserve(r.operands().size());
        for (const Regex& op : r.operands()) {
            parts.push_back(derive_canonical(l, op));
        }
        return mk_union(std::move(parts));
    }
    }
    return Regex::empty();
}

void collect_labels(const Regex& r, std::set<Label>& out) {
    if (r.kind() == Regex::Kind::Lit) {
        out.insert(r.label());
        return;
    }
    for (const Regex& op : r.operands()) {
        collect_labels(op, out);
    }
}

} // namespace

Regex canonicalize(const Regex& r) {
    switch (r.kind()) {
    case Regex::Kind::Empty:
    case Regex::Kind::Epsilon:
    case Regex::Kind::Lit: return r;
    case Regex::Kind::Star: return mk_star(canonicalize(r.operands()[0]));
    case Regex::Kind::Question:
        return mk_union({Regex::epsilon(), canonicalize(r.operands()[0])});
    case Regex::Kind::Concat:
        return mk_concat(canonicalize(r.operands()[0]), canonicalize(r.operands()[1]));
    case Regex::Kind::Union: {
        std::vector<Regex> parts;
        for (const Regex& op : r.operands()) {
            parts.push_back(canonicalize(op));
        }
        return mk_union(std::move(parts));
    }
    }
    return r;
}

Regex derive(const Label& l, const Regex& r) { return derive_canonical(l, canonicalize(r)); }

std::set<Label> labels_of(const Regex& r) {
    std::set<Label> out;
    collect_labels(r, out);
    return out;
}

std::set<Label> head_set(const Regex& r) {
    const Regex canonical = canonicalize(r);
    std::set<Label> out;
    for (const Label& l : labels_of(canonical)) {
        if (!derive_canonical(l, canonical).is_empty()) {
            out.insert(l);
        }
    }
    return out;
}

bool matches_word(const Regex& r, std::span<const Label> word) {
    switch (r.kind()) {
    case Regex::Kind::Empty: return false;
    case Regex::Kind::Epsilon: return word.empty();
    case Regex::Kind::Lit: return word.size() == 1 && word[0] == r.label();
    case Regex::Kind::Question: return word.empty() || matches_word(r.operands()[0], word);
    case Regex::Kind::Union:
        return std::any_of(r.operands().begin(), r.operands().end(),
                           [&](const Regex& op) { return matches_word(op, word); });
    case Regex::Kind::Concat:
        for (std::size_t i = 0; i <= word.size(); ++i) {
            if (matches_word(r.operands()[0], word.first(i)) &&
                matches_word(r.operands()[1], word.subspan(i))) {
                return true;
            }
        }
        return false;
    case Regex::Kind::Star:
        if (word.empty()) {
            return true;
        }
        // The first iteration consumes at least one label.
        for (std::size_t i = 1; i <= word.size(); ++i) {
            if (matches_word(r.operands()[0], word.first(i)) && matches_word(r, word.subspan(i))) {
                return true;
            }
        }
        return false;
    }
    return false;
}

std::vector<DfaState> gen_states(const Regex& r, std::size_t state_limit) {
    std::vector<DfaState> states;
    std::map<Regex, std::size_t> index;
    std::deque<std::size_t> queue;

    auto intern = [&](const Regex& re) {
        auto [it, inserted] = index.try_emplace(re, states.size());
        if (inserted) {
            if (states.size() >= state_limit) {
                throw Error("derivative automaton exceeds " + std::to_string(state_limit) +
                            " states");
            }
            states.push_back({"n" + std::to_string(states.size()), re, {}});
            queue.push_back(it->second);
        }
        return it->second;
    };

    intern(canonicalize(r));
    while (!queue.empty()) {
        const std::size_t current = queue.front();
        queue.pop_front();
        const Regex re = states[current].regex;
        for (const Label& l : labels_of(re)) {
            Regex d = derive_canonical(l, re);
            if (d.is_empty()) {
                continue;
            }
            const std::size_t target = intern(d);
            states[current].transitions.emplace(l, states[target].name);
        }
    }
    return states;
}

} // namespace scopeq
