#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistrec {

using i64 = std::int64_t;

struct ZeroDenominator : std::domain_error {
    int slot;  // 0-based position of the offending fraction or term, -1 if unknown
    ZeroDenominator(const std::string& what, int s) : std::domain_error(what), slot(s) {}
};

// Exact rational in lowest terms, den > 0.  The value 1/0 stands for the infinity
// tangle and is only produced by functions that document it.
struct Fraction {
    i64 num = 0;
    i64 den = 1;

    Fraction() = default;
    Fraction(i64 n, i64 d = 1);
    static Fraction infinity() { Fraction f; f.num = 1; f.den = 0; return f; }

    bool is_infinite() const { return den == 0; }
    bool is_integer() const { return den == 1; }
    i64 floor() const;
    i64 ceil() const;

    Fraction operator+(const Fraction& o) const;
    Fraction operator-(const Fraction& o) const;
    Fraction operator-() const;
    Fraction reciprocal() const;  // 0 maps to infinity and back
    bool operator==(const Fraction& o) const = default;
    std::string to_string() const;
};

// Partial quotients, innermost first: [a0, a1, ..., an] means an + 1/(a(n-1) + 1/(... + 1/a0)).
using TangleWord = std::vector<i64>;

Fraction cf_eval(const TangleWord& w);
TangleWord cf_expand_alternating(const Fraction& f);
// Expansion with every term of the sign of f; the standard alternating diagram.
TangleWord cf_expand_uniform(const Fraction& f);

std::array<Fraction, 3> montesinos_fractions(i64 p, i64 q, i64 r, i64 s, i64 t, i64 u);

// Unoriented 2-bridge classification: p = p' and q' = +-q^(+-1) mod p.
bool two_bridge_equivalent(const Fraction& a, const Fraction& b);
// Same, but mirror images are distinguished (q' = q^(+-1) mod p).
bool two_bridge_equivalent_oriented(const Fraction& a, const Fraction& b);

// Reduce N(f) to (p, q) with p >= 0 and 0 <= q < p (q = 0 only for p <= 1).
struct TwoBridge {
    i64 p = 1;
    i64 q = 0;
    bool operator==(const TwoBridge&) const = default;
    auto operator<=>(const TwoBridge&) const = default;
};
TwoBridge two_bridge_of(const Fraction& f);
// Smallest of q, q^-1 (and, when unoriented, p-q, p-q^-1).
TwoBridge two_bridge_canonical(const TwoBridge& b, bool unoriented);
TwoBridge two_bridge_mirror(const TwoBridge& b);
int two_bridge_crossings(const TwoBridge& b);

i64 mod_inverse(i64 a, i64 m);  // requires gcd(a, m) = 1, m >= 1

// Rational tangle realized by the F family row pair (a, b): a/(ab - |a| + 1).
Fraction family_row_fraction(i64 a, i64 b);

// Reduced form of the numerator closure N(f1 + ... + fm).
// A closure reduces to split pieces; each piece is a connected sum of
// 2-bridge links and Montesinos links with at least three non-integral tangles.
struct MontesinosLink {
    std::vector<Fraction> tangles;  // each in (0,1)
    i64 e = 0;                      // integral part collected into twists
    bool operator==(const MontesinosLink&) const = default;
};
struct Summand {
    bool rational = true;
    TwoBridge bridge;
    MontesinosLink mont;
    int crossings() const;
};
struct ClosureForm {
    std::vector<std::vector<Summand>> pieces;  // split pieces, each a connected sum
    int free_loops = 0;                        // trivial split components
    int crossings() const;
};

ClosureForm numerator_closure(const std::vector<Fraction>& tangles);
ClosureForm denominator_closure(const std::vector<Fraction>& tangles);

ClosureForm mirror_closure(const ClosureForm& cf);
// Canonical text for the link type: 2-bridge summands by (p, q) with q reduced under
// q -> q^-1 mod p, Montesinos summands by e and the dihedral class of their tangles.
std::string closure_key(const ClosureForm& cf);
// The smaller of the keys of cf and its mirror image.
std::string unoriented_closure_key(const ClosureForm& cf);

// Minimal crossing count of the canonical Montesinos diagram.
int montesinos_crossings(const MontesinosLink& m);

}  // namespace twistrec
