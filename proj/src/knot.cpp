#include "orderable/knot.hpp"

#include <algorithm>
#include <cstdlib>
#include <regex>
#include <sstream>

#include "orderable/error.hpp"

namespace orderable {

const char* family_name(Family family) noexcept {
    switch (family) {
        case Family::EvenPlus: return "EvenPlus";
        case Family::EvenMinus: return "EvenMinus";
        case Family::OddMinus: return "OddMinus";
    }
    return "?";
}

KnotSpec KnotSpec::make(Family family, int m, int n) {
    if (m < 1 || n < 1)
        throw ParseError(ParseError::Kind::BadArgument, "KnotSpec: need m >= 1 and n >= 1");
    KnotSpec s;
    s.family = family;
    s.m = m;
    s.n = n;
    switch (family) {
        case Family::EvenPlus:
            s.k = 2 * m;
            s.p = -n;
            s.epsilon = 0;
            break;
        case Family::EvenMinus:
            s.k = 2 * m;
            s.p = n;
            s.epsilon = 0;
            break;
        case Family::OddMinus:
            s.k = 2 * m + 1;
            s.p = n;
            s.epsilon = 2 * n;
            break;
    }
    if (std::abs(s.k * 2 * s.p) < 3)
        throw ParseError(ParseError::Kind::TooSmall, "KnotSpec: |kl| < 3");
    return s;
}

std::string KnotSpec::to_string() const {
    std::ostringstream os;
    os << "C(" << k << "," << -2 * p << ")";
    return os.str();
}

KnotSpec parse_conway(const std::string& text) {
    static const std::regex pattern(R"(^\s*C\s*\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)\s*$)");
    std::smatch match;
    if (!std::regex_match(text, match, pattern))
        throw ParseError(ParseError::Kind::Syntax, "expected C(<int>,<int>), got '" + text + "'");

    long k = 0, l = 0;
    try {
        k = std::stol(match[1].str());
        l = std::stol(match[2].str());
    } catch (const std::out_of_range&) {
        throw ParseError(ParseError::Kind::Syntax, "integer out of range in '" + text + "'");
    }
    if (std::abs(k) > 100000 || std::abs(l) > 100000)
        throw ParseError(ParseError::Kind::Syntax, "twist parameters too large in '" + text + "'");
    if ((k * l) % 2 != 0)
        throw ParseError(ParseError::Kind::Link, text + " is a two-component link (kl odd)");
    if (std::abs(k * l) < 3)
        throw ParseError(ParseError::Kind::TooSmall, text + " has |kl| < 3");

    // C(k, l) = C(-l, -k); pick the form with k > 0 and l even
    if (!(k > 0 && l % 2 == 0)) {
        if (-l > 0 && k % 2 == 0) {
            const long nk = -l, nl = -k;
            k = nk;
            l = nl;
        } else {
            throw ParseError(ParseError::Kind::UnsupportedFamily,
                             text + " is only reachable by mirroring; not supported");
        }
    }

    if (k % 2 == 0) {
        const int m = static_cast<int>(k / 2);
        if (l > 0) return KnotSpec::make(Family::EvenPlus, m, static_cast<int>(l / 2));
        return KnotSpec::make(Family::EvenMinus, m, static_cast<int>(-l / 2));
    }
    if (l > 0)
        throw ParseError(ParseError::Kind::UnsupportedFamily,
                         text + " is of type C(2m+1, 2n), which is not supported");
    return KnotSpec::make(Family::OddMinus, static_cast<int>(k / 2), static_cast<int>(-l / 2));
}

Word::Word(const std::vector<Letter>& letters) {
    for (const Letter& l : letters) push(l.gen, l.exp);
}

Word& Word::push(char gen, int exp) {
    if (exp == 0) return *this;
    if (!letters_.empty() && letters_.back().gen == gen) {
        letters_.back().exp += exp;
        if (letters_.back().exp == 0) letters_.pop_back();
    } else {
        letters_.push_back({gen, exp});
    }
    return *this;
}

Word& Word::append(const Word& other) {
    for (const Letter& l : other.letters_) push(l.gen, l.exp);
    return *this;
}

Word Word::inverse() const {
    Word out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push(it->gen, -it->exp);
    return out;
}

Word Word::reversed() const {
    Word out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push(it->gen, it->exp);
    return out;
}

Word Word::power(int p) const {
    const Word base = p < 0 ? inverse() : *this;
    Word out;
    for (int i = 0; i < std::abs(p); ++i) out.append(base);
    return out;
}

int Word::exponent_sum() const {
    int s = 0;
    for (const Letter& l : letters_) s += l.exp;
    return s;
}

int Word::length() const {
    int s = 0;
    for (const Letter& l : letters_) s += std::abs(l.exp);
    return s;
}

std::string Word::to_string() const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const Letter& l : letters_) {
        if (!first) os << ' ';
        first = false;
        os << l.gen;
        if (l.exp != 1) os << '^' << l.exp;
    }
    return os.str();
}

Word operator*(const Word& lhs, const Word& rhs) {
    Word out = lhs;
    out.append(rhs);
    return out;
}

Word word_w(const KnotSpec& spec) {
    Word w;
    for (int i = 0; i < spec.m; ++i) w.push('a', 1).push('b', -1);
    if (spec.family == Family::OddMinus) w.push('a', 1).push('b', 1);
    for (int i = 0; i < spec.m; ++i) w.push('a', -1).push('b', 1);
    return w;
}

Word word_w_power(const KnotSpec& spec) { return word_w(spec).power(spec.p); }

Word word_longitude(const KnotSpec& spec) {
    const Word wp = word_w_power(spec);
    Word lam = wp * wp.reversed();
    lam.push('a', -2 * spec.epsilon);
    return lam.inverse();
}

}  // namespace orderable
