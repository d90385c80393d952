#include "topkat/semantics.hpp"

#include "topkat/error.hpp"

#include <cctype>
#include <map>

namespace topkat {

GuardedString::GuardedString(std::vector<Atom> atoms_, std::vector<std::uint32_t> acts_)
    : atoms(std::move(atoms_)), acts(std::move(acts_)) {
    if (atoms.size() != acts.size() + 1)
        throw InputError("guarded string must have exactly one more atom than actions");
}

GuardedString GuardedString::prefix(std::size_t j) const {
    return GuardedString({atoms.begin(), atoms.begin() + static_cast<std::ptrdiff_t>(j) + 1},
                         {acts.begin(), acts.begin() + static_cast<std::ptrdiff_t>(j)});
}

GuardedString GuardedString::suffix(std::size_t j) const {
    return GuardedString({atoms.begin() + static_cast<std::ptrdiff_t>(j), atoms.end()},
                         {acts.begin() + static_cast<std::ptrdiff_t>(j), acts.end()});
}

GuardedString GuardedString::reversed() const {
    return GuardedString({atoms.rbegin(), atoms.rend()}, {acts.rbegin(), acts.rend()});
}

std::strong_ordering operator<=>(const GuardedString& a, const GuardedString& b) {
    if (auto c = a.length() <=> b.length(); c != 0)
        return c;
    for (std::size_t i = 0; i < a.length(); ++i) {
        if (auto c = a.atoms[i] <=> b.atoms[i]; c != 0)
            return c;
        if (auto c = a.acts[i] <=> b.acts[i]; c != 0)
            return c;
    }
    return a.last() <=> b.last();
}

std::vector<Atom> all_atoms(const Alphabet& alphabet, std::size_t atom_cap) {
    const std::size_t k = alphabet.tests().size();
    if (k > atom_cap)
        throw ResourceError("atom cap exceeded: " + std::to_string(k) + " tests declared, cap is " +
                            std::to_string(atom_cap));
    if (k > 31)
        throw ResourceError("more than 31 tests cannot be represented");
    std::vector<Atom> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << k); ++code) {
        // The first test is the most significant digit of the enumeration.
        Atom a;
        for (std::size_t i = 0; i < k; ++i)
            if ((code >> (k - 1 - i)) & 1U)
                a.bits |= std::uint32_t{1} << i;
        out.push_back(a);
    }
    return out;
}

bool satisfies(Atom a, const Term& t, const Alphabet& alphabet) {
    switch (t.kind()) {
    case Kind::zero: return false;
    case Kind::one: return true;
    case Kind::test: {
        auto i = alphabet.test_index(t.name());
        if (!i)
            throw InputError("undeclared test '" + t.name() + "'");
        return a.value(*i);
    }
    case Kind::neg: return !satisfies(a, t.lhs(), alphabet);
    case Kind::plus: return satisfies(a, t.lhs(), alphabet) || satisfies(a, t.rhs(), alphabet);
    case Kind::dot: return satisfies(a, t.lhs(), alphabet) && satisfies(a, t.rhs(), alphabet);
    case Kind::top:
    case Kind::act:
    case Kind::star:
        break;
    }
    throw SortError("'" + render(t) + "' is not a test");
}

std::optional<GuardedString> fuse(const GuardedString& s1, const GuardedString& s2) {
    if (s1.last() != s2.first())
        return std::nullopt;
    GuardedString out = s1;
    out.atoms.insert(out.atoms.end(), s2.atoms.begin() + 1, s2.atoms.end());
    out.acts.insert(out.acts.end(), s2.acts.begin(), s2.acts.end());
    return out;
}

Language all_guarded_strings(const Alphabet& alphabet, std::size_t max_actions, std::size_t atom_cap) {
    const auto atoms = all_atoms(alphabet, atom_cap);
    Language out;
    std::vector<GuardedString> layer;
    for (Atom a : atoms)
        layer.emplace_back(a);
    for (std::size_t len = 0;; ++len) {
        out.insert(layer.begin(), layer.end());
        if (len == max_actions)
            break;
        std::vector<GuardedString> next;
        for (const auto& s : layer)
            for (std::uint32_t p = 0; p < alphabet.actions().size(); ++p)
                for (Atom a : atoms) {
                    GuardedString e = s;
                    e.acts.push_back(p);
                    e.atoms.push_back(a);
                    next.push_back(std::move(e));
                }
        layer = std::move(next);
    }
    return out;
}

Language fuse_languages(const Language& lhs, const Language& rhs, std::size_t max_actions) {
    std::map<std::uint32_t, std::vector<const GuardedString*>> by_first;
    for (const auto& s : rhs)
        by_first[s.first().bits].push_back(&s);
    Language out;
    for (const auto& s1 : lhs) {
        if (s1.length() > max_actions)
            continue;
        auto it = by_first.find(s1.last().bits);
        if (it == by_first.end())
            continue;
        for (const GuardedString* s2 : it->second) {
            if (s1.length() + s2->length() > max_actions)
                continue;
            out.insert(*fuse(s1, *s2));
        }
    }
    return out;
}

namespace {

Language lang_rec(const Term& t, const Alphabet& alphabet, std::size_t n, const std::vector<Atom>& atoms) {
    switch (t.kind()) {
    case Kind::zero:
    case Kind::one:
    case Kind::test:
    case Kind::neg: {
        Language out;
        for (Atom a : atoms)
            if (satisfies(a, t, alphabet))
                out.emplace(a);
        return out;
    }
    case Kind::act: {
        Language out;
        if (n == 0)
            return out;
        auto p = alphabet.action_index(t.name());
        if (!p)
            throw InputError("undeclared action '" + t.name() + "'");
        for (Atom a : atoms)
            for (Atom b : atoms)
                out.insert(GuardedString({a, b}, {static_cast<std::uint32_t>(*p)}));
        return out;
    }
    case Kind::plus: {
        Language out = lang_rec(t.lhs(), alphabet, n, atoms);
        out.merge(lang_rec(t.rhs(), alphabet, n, atoms));
        return out;
    }
    case Kind::dot:
        return fuse_languages(lang_rec(t.lhs(), alphabet, n, atoms), lang_rec(t.rhs(), alphabet, n, atoms), n);
    case Kind::star: {
        const Language body = lang_rec(t.lhs(), alphabet, n, atoms);
        Language out;
        for (Atom a : atoms)
            out.emplace(a);
        Language frontier = out;
        while (!frontier.empty()) {
            Language next;
            for (auto& s : fuse_languages(frontier, body, n))
                if (!out.contains(s))
                    next.insert(s);
            out.insert(next.begin(), next.end());
            frontier = std::move(next);
        }
        return out;
    }
    case Kind::top:
        break;
    }
    throw SortError("bounded languages are defined for T-free terms only; reduce the term first");
}

} // namespace

Language lang_bounded(const Term& t, const Alphabet& alphabet, std::size_t max_actions, std::size_t atom_cap) {
    if (contains_top(t))
        throw SortError("bounded languages are defined for T-free terms only; reduce the term first");
    check_declared(t, alphabet);
    return lang_rec(t, alphabet, max_actions, all_atoms(alphabet, atom_cap));
}

// --------------------------------------------------------------------------
// Text form

std::string render_atom(Atom a, const Alphabet& alphabet) {
    std::string out = "[";
    for (std::size_t i = 0; i < alphabet.tests().size(); ++i) {
        if (i)
            out += '&';
        if (!a.value(i))
            out += '!';
        out += alphabet.tests()[i];
    }
    out += ']';
    return out;
}

std::string render(const GuardedString& s, const Alphabet& alphabet) {
    std::string out = render_atom(s.first(), alphabet);
    for (std::size_t i = 0; i < s.length(); ++i) {
        out += ' ';
        if (s.acts[i] >= alphabet.actions().size())
            throw InternalError("guarded string action index outside its alphabet");
        out += alphabet.actions()[s.acts[i]];
        out += ' ';
        out += render_atom(s.atoms[i + 1], alphabet);
    }
    return out;
}

namespace {

class GsParser {
public:
    GsParser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

    GuardedString parse() {
        std::vector<Atom> atoms{parse_atom()};
        std::vector<std::uint32_t> acts;
        for (;;) {
            skip_ws();
            if (pos_ == text_.size())
                return GuardedString(std::move(atoms), std::move(acts));
            std::size_t start = pos_;
            std::string id = ident();
            auto p = alphabet_.action_index(id);
            if (!p)
                throw ParseError("undeclared action '" + id + "'", start);
            acts.push_back(static_cast<std::uint32_t>(*p));
            atoms.push_back(parse_atom());
        }
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected an identifier", start);
        return std::string(text_.substr(start, pos_ - start));
    }

    Atom parse_atom() {
        expect('[');
        Atom a;
        std::vector<bool> seen(alphabet_.tests().size(), false);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
        } else {
            for (;;) {
                skip_ws();
                bool positive = true;
                if (pos_ < text_.size() && text_[pos_] == '!') {
                    positive = false;
                    ++pos_;
                }
                std::size_t start = pos_;
                std::string id = ident();
                auto i = alphabet_.test_index(id);
                if (!i)
                    throw ParseError("undeclared test '" + id + "'", start);
                if (seen[*i])
                    throw ParseError("test '" + id + "' repeated in atom", start);
                seen[*i] = true;
                if (positive)
                    a.bits |= std::uint32_t{1} << *i;
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == '&') {
                    ++pos_;
                    continue;
                }
                expect(']');
                break;
            }
        }
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!seen[i])
                throw ParseError("atom does not assign test '" + alphabet_.tests()[i] + "'", pos_);
        return a;
    }

    std::string_view text_;
    const Alphabet& alphabet_;
    std::size_t pos_ = 0;
};

} // namespace

GuardedString parse_guarded_string(std::string_view text, const Alphabet& alphabet) {
    return GsParser(text, alphabet).parse();
}

GuardedString translate(const GuardedString& s, const Alphabet& from, const Alphabet& to) {
    std::vector<Atom> atoms;
    for (Atom a : s.atoms) {
        Atom b;
        for (std::size_t i = 0; i < to.tests().size(); ++i) {
            auto j = from.test_index(to.tests()[i]);
            if (j && a.value(*j))
                b.bits |= std::uint32_t{1} << i;
        }
        atoms.push_back(b);
    }
    std::vector<std::uint32_t> acts;
    for (auto p : s.acts) {
        auto q = to.action_index(from.actions().at(p));
        if (!q)
            throw InputError("action '" + from.actions()[p] + "' missing from target alphabet");
        acts.push_back(static_cast<std::uint32_t>(*q));
    }
    return GuardedString(std::move(atoms), std::move(acts));
}

} // namespace topkat
