#include "topkat/syntax.hpp"

#include "topkat/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace topkat {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

void validate_identifier(const std::string& id) {
    if (id.empty())
        throw InputError("empty identifier in alphabet");
    if (!is_ident_start(id[0]) || !std::all_of(id.begin(), id.end(), is_ident_char))
        throw InputError("malformed identifier '" + id + "'");
    if (id == "T")
        throw InputError("'T' is reserved for the top element and cannot be declared");
    if (id.starts_with("__"))
        throw InputError("identifier '" + id + "' uses the reserved '__' prefix");
}

std::optional<std::size_t> index_in(const std::vector<std::string>& v, std::string_view name) {
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
}

} // namespace

Alphabet::Alphabet(std::vector<std::string> actions, std::vector<std::string> tests)
    : actions_(std::move(actions)), tests_(std::move(tests)) {
    std::set<std::string> seen;
    for (const auto* group : {&actions_, &tests_}) {
        for (const auto& id : *group) {
            validate_identifier(id);
            if (!seen.insert(id).second)
                throw InputError("identifier '" + id + "' declared twice");
        }
    }
}

Alphabet Alphabet::with_top_action() const {
    if (has_top_action())
        return *this;
    auto actions = actions_;
    actions.emplace_back(top_action_name);
    return Alphabet(Unchecked{}, std::move(actions), tests_);
}

std::optional<std::size_t> Alphabet::action_index(std::string_view name) const { return index_in(actions_, name); }
std::optional<std::size_t> Alphabet::test_index(std::string_view name) const { return index_in(tests_, name); }
bool Alphabet::has_top_action() const { return is_action(top_action_name); }

Alphabet Alphabet::restrict_to(const std::set<std::string>& actions, const std::set<std::string>& tests) const {
    std::vector<std::string> a;
    std::vector<std::string> b;
    for (const auto& id : actions_)
        if (actions.contains(id))
            a.push_back(id);
    for (const auto& id : tests_)
        if (tests.contains(id))
            b.push_back(id);
    return Alphabet(Unchecked{}, std::move(a), std::move(b));
}

// --------------------------------------------------------------------------
// Term

struct Term::Node {
    Kind kind;
    std::string name;
    std::optional<Term> lhs;
    std::optional<Term> rhs;
    std::size_t hash;
    std::size_t size;
};

Term Term::make(Kind kind, std::string name, std::optional<Term> lhs, std::optional<Term> rhs) {
    std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<std::string>{}(name));
    std::size_t size = 1;
    if (lhs) {
        mix(lhs->hash());
        size += lhs->size();
    }
    if (rhs) {
        mix(rhs->hash());
        size += rhs->size();
    }
    return Term(std::make_shared<const Node>(Node{kind, std::move(name), std::move(lhs), std::move(rhs), h, size}));
}

Term Term::zero() {
    static const Term t = make(Kind::zero, {}, std::nullopt, std::nullopt);
    return t;
}
Term Term::one() {
    static const Term t = make(Kind::one, {}, std::nullopt, std::nullopt);
    return t;
}
Term Term::top() {
    static const Term t = make(Kind::top, {}, std::nullopt, std::nullopt);
    return t;
}
Term Term::act(std::string name) { return make(Kind::act, std::move(name), std::nullopt, std::nullopt); }
Term Term::test(std::string name) { return make(Kind::test, std::move(name), std::nullopt, std::nullopt); }

Term Term::neg(Term t) {
    if (!is_test_term(t))
        throw SortError("negation applied to a non-test term '" + render(t) + "'");
    return make(Kind::neg, {}, std::move(t), std::nullopt);
}

Term Term::plus(Term lhs, Term rhs) { return make(Kind::plus, {}, std::move(lhs), std::move(rhs)); }
Term Term::dot(Term lhs, Term rhs) { return make(Kind::dot, {}, std::move(lhs), std::move(rhs)); }
Term Term::star(Term t) { return make(Kind::star, {}, std::move(t), std::nullopt); }

Kind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::name() const noexcept { return node_->name; }
const Term& Term::lhs() const { return *node_->lhs; }
const Term& Term::rhs() const { return *node_->rhs; }
std::size_t Term::hash() const noexcept { return node_->hash; }
std::size_t Term::size() const noexcept { return node_->size; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0)
        return c;
    if (auto c = a.name() <=> b.name(); c != 0)
        return c;
    if (a.node_->lhs) {
        if (auto c = a.lhs() <=> b.lhs(); c != 0)
            return c;
    }
    if (a.node_->rhs) {
        if (auto c = a.rhs() <=> b.rhs(); c != 0)
            return c;
    }
    return std::strong_ordering::equal;
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.hash() != b.hash() || a.size() != b.size())
        return false;
    return (a <=> b) == 0;
}

Term sum(const std::vector<Term>& terms) {
    if (terms.empty())
        return Term::zero();
    Term acc = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i)
        acc = Term::plus(acc, terms[i]);
    return acc;
}

Term seq(const std::vector<Term>& terms) {
    if (terms.empty())
        return Term::one();
    Term acc = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i)
        acc = Term::dot(acc, terms[i]);
    return acc;
}

bool is_test_term(const Term& t) {
    switch (t.kind()) {
    case Kind::zero:
    case Kind::one:
    case Kind::test:
        return true;
    case Kind::top:
    case Kind::act:
    case Kind::star:
        return false;
    case Kind::neg:
        return true; // only constructible over test terms
    case Kind::plus:
    case Kind::dot:
        return is_test_term(t.lhs()) && is_test_term(t.rhs());
    }
    return false;
}

bool contains_top(const Term& t) {
    switch (t.kind()) {
    case Kind::top:
        return true;
    case Kind::zero:
    case Kind::one:
    case Kind::act:
    case Kind::test:
    case Kind::neg:
        return false;
    case Kind::star:
        return contains_top(t.lhs());
    case Kind::plus:
    case Kind::dot:
        return contains_top(t.lhs()) || contains_top(t.rhs());
    }
    return false;
}

Term reverse(const Term& t) {
    switch (t.kind()) {
    case Kind::zero:
    case Kind::one:
    case Kind::top:
    case Kind::act:
    case Kind::test:
        return t;
    case Kind::neg:
        return Term::neg(reverse(t.lhs()));
    case Kind::star:
        return Term::star(reverse(t.lhs()));
    case Kind::plus:
        return Term::plus(reverse(t.lhs()), reverse(t.rhs()));
    case Kind::dot:
        return Term::dot(reverse(t.rhs()), reverse(t.lhs()));
    }
    return t;
}

namespace {

void collect(const Term& t, Kind leaf, std::set<std::string>& out) {
    if (t.kind() == leaf) {
        out.insert(t.name());
        return;
    }
    switch (t.kind()) {
    case Kind::neg:
    case Kind::star:
        collect(t.lhs(), leaf, out);
        break;
    case Kind::plus:
    case Kind::dot:
        collect(t.lhs(), leaf, out);
        collect(t.rhs(), leaf, out);
        break;
    default:
        break;
    }
}

} // namespace

std::set<std::string> actions_of(const Term& t) {
    std::set<std::string> out;
    collect(t, Kind::act, out);
    return out;
}

std::set<std::string> tests_of(const Term& t) {
    std::set<std::string> out;
    collect(t, Kind::test, out);
    return out;
}

void check_declared(const Term& t, const Alphabet& alphabet) {
    for (const auto& a : actions_of(t))
        if (!alphabet.is_action(a))
            throw InputError("undeclared action '" + a + "'");
    for (const auto& b : tests_of(t))
        if (!alphabet.is_test(b))
            throw InputError("undeclared test '" + b + "'");
}

// --------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { end, plus, semi, star, bang, lparen, rparen, zero, one, top, ident };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Parser {
public:
    Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) { advance(); }

    Term parse_all() {
        Term t = parse_sum();
        if (tok_.kind != Tok::end)
            throw ParseError("unexpected '" + tok_.text + "'", tok_.pos);
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::size_t start = pos_;
        if (pos_ == text_.size()) {
            tok_ = {Tok::end, "end of input", start};
            return;
        }
        char c = text_[pos_];
        if (is_ident_start(c)) {
            while (pos_ < text_.size() && is_ident_char(text_[pos_]))
                ++pos_;
            std::string id(text_.substr(start, pos_ - start));
            tok_ = {id == "T" ? Tok::top : Tok::ident, id, start};
            return;
        }
        ++pos_;
        switch (c) {
        case '+': tok_ = {Tok::plus, "+", start}; return;
        case ';':
        case '.': tok_ = {Tok::semi, std::string(1, c), start}; return;
        case '*': tok_ = {Tok::star, "*", start}; return;
        case '!': tok_ = {Tok::bang, "!", start}; return;
        case '(': tok_ = {Tok::lparen, "(", start}; return;
        case ')': tok_ = {Tok::rparen, ")", start}; return;
        case '0': tok_ = {Tok::zero, "0", start}; return;
        case '1': tok_ = {Tok::one, "1", start}; return;
        default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    bool starts_atom() const {
        switch (tok_.kind) {
        case Tok::zero:
        case Tok::one:
        case Tok::top:
        case Tok::ident:
        case Tok::bang:
        case Tok::lparen:
            return true;
        default:
            return false;
        }
    }

    Term parse_sum() {
        Term t = parse_seq();
        while (tok_.kind == Tok::plus) {
            advance();
            t = Term::plus(t, parse_seq());
        }
        return t;
    }

    Term parse_seq() {
        Term t = parse_star();
        for (;;) {
            if (tok_.kind == Tok::semi) {
                advance();
                t = Term::dot(t, parse_star());
            } else if (starts_atom()) {
                t = Term::dot(t, parse_star());
            } else {
                return t;
            }
        }
    }

    Term parse_star() {
        Term t = parse_atom();
        while (tok_.kind == Tok::star) {
            advance();
            t = Term::star(t);
        }
        return t;
    }

    Term parse_atom() {
        Token tok = tok_;
        switch (tok.kind) {
        case Tok::zero: advance(); return Term::zero();
        case Tok::one: advance(); return Term::one();
        case Tok::top: advance(); return Term::top();
        case Tok::ident:
            advance();
            if (alphabet_.is_test(tok.text))
                return Term::test(tok.text);
            if (alphabet_.is_action(tok.text))
                return Term::act(tok.text);
            throw ParseError("undeclared identifier '" + tok.text + "'", tok.pos);
        case Tok::bang: {
            advance();
            Term operand = parse_atom();
            if (!is_test_term(operand))
                throw ParseError("negation of non-test '" + render(operand) + "'", tok.pos);
            return Term::neg(operand);
        }
        case Tok::lparen: {
            advance();
            Term t = parse_sum();
            if (tok_.kind != Tok::rparen)
                throw ParseError("expected ')' but found '" + tok_.text + "'", tok_.pos);
            advance();
            return t;
        }
        default:
            throw ParseError("expected a term but found '" + tok.text + "'", tok.pos);
        }
    }

    std::string_view text_;
    const Alphabet& alphabet_;
    std::size_t pos_ = 0;
    Token tok_{Tok::end, "", 0};
};

// Binding strength: sum < sequence < star < leaf/negation.
int precedence(Kind k) {
    switch (k) {
    case Kind::plus: return 0;
    case Kind::dot: return 1;
    case Kind::star: return 2;
    default: return 3;
    }
}

void render_into(const Term& t, int context, std::string& out) {
    bool parens = precedence(t.kind()) < context;
    if (parens)
        out += '(';
    switch (t.kind()) {
    case Kind::zero: out += '0'; break;
    case Kind::one: out += '1'; break;
    case Kind::top: out += 'T'; break;
    case Kind::act:
    case Kind::test: out += t.name(); break;
    case Kind::neg:
        out += '!';
        render_into(t.lhs(), 3, out);
        break;
    case Kind::star:
        render_into(t.lhs(), 2, out);
        out += '*';
        break;
    case Kind::plus:
        render_into(t.lhs(), 0, out);
        out += " + ";
        render_into(t.rhs(), 1, out);
        break;
    case Kind::dot:
        render_into(t.lhs(), 1, out);
        out += ' ';
        render_into(t.rhs(), 2, out);
        break;
    }
    if (parens)
        out += ')';
}

} // namespace

Term parse(std::string_view text, const Alphabet& alphabet) { return Parser(text, alphabet).parse_all(); }

std::string render(const Term& t) {
    std::string out;
    render_into(t, 0, out);
    return out;
}

} // namespace topkat
