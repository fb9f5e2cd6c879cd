#pragma once

#include <string>
#include <vector>

namespace orderable {

/// The three double twist families handled here, all written as C(k, -2p).
enum class Family {
    EvenPlus,   // C(2m, 2n),    p = -n
    EvenMinus,  // C(2m, -2n),   p = n
    OddMinus,   // C(2m+1, -2n), p = n
};

const char* family_name(Family family) noexcept;

struct KnotSpec {
    Family family = Family::OddMinus;
    int m = 1;
    int n = 2;
    int k = 3;        // 2m or 2m+1
    int p = 2;        // the knot is C(k, -2p)
    int epsilon = 4;  // 0 for even k, 2p for odd k

    bool even() const noexcept { return family != Family::OddMinus; }

    /// Normalized Conway notation, e.g. "C(3,-4)".
    std::string to_string() const;

    static KnotSpec make(Family family, int m, int n);

    bool operator==(const KnotSpec&) const = default;
};

/// Parses "C(<int>,<int>)" (whitespace allowed) and normalizes with
/// C(k, l) = C(-l, -k). Throws ParseError for links, |kl| < 3, mirror-only
/// inputs and the unsupported family C(2m+1, 2n).
KnotSpec parse_conway(const std::string& text);

struct Letter {
    char gen;  // 'a' or 'b'
    int exp;   // nonzero

    bool operator==(const Letter&) const = default;
};

/// Freely reduced word in a, b, run-length encoded.
class Word {
public:
    Word() = default;
    explicit Word(const std::vector<Letter>& letters);

    /// Appends with free reduction against the last run.
    Word& push(char gen, int exp);
    Word& append(const Word& other);

    Word inverse() const;
    /// The word read backwards; exponents are kept.
    Word reversed() const;
    Word power(int p) const;

    int exponent_sum() const;
    /// Number of generator letters, i.e. sum of |exp|.
    int length() const;
    const std::vector<Letter>& letters() const noexcept { return letters_; }
    bool empty() const noexcept { return letters_.empty(); }

    /// e.g. "a b^-1 a^-1 b"; the empty word prints as "1".
    std::string to_string() const;

    bool operator==(const Word&) const = default;

private:
    std::vector<Letter> letters_;
};

Word operator*(const Word& lhs, const Word& rhs);

/// w = (ab^-1)^m (a^-1 b)^m for even k, (ab^-1)^m ab (a^-1 b)^m for odd k.
Word word_w(const KnotSpec& spec);

/// w^p (p may be negative).
Word word_w_power(const KnotSpec& spec);

/// Canonical longitude (w^p (w^p)^* a^{-2 epsilon})^{-1}.
Word word_longitude(const KnotSpec& spec);

}  // namespace orderable
