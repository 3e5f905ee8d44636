#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistrec/tangle.hpp"

namespace twistrec {

struct MalformedDatum : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Kind { Unknot, Unlink, Torus, Clasp, Pretzel, MontF, G1, G2, ConnectedSum, WithTrivialComponent };

// Symbolic knot or link in one of the product families.  params hold the integer
// parameters in the order of the text syntax; parts hold summands (ConnectedSum)
// or the single inner datum (WithTrivialComponent).
struct FamilyDatum {
    Kind kind = Kind::Unknot;
    std::vector<i64> params;
    std::vector<FamilyDatum> parts;

    static FamilyDatum unknot() { return {}; }
    static FamilyDatum unlink(i64 n) { return {Kind::Unlink, {n}, {}}; }
    static FamilyDatum torus(i64 m) { return {Kind::Torus, {m}, {}}; }
    static FamilyDatum clasp(i64 r, i64 v) { return {Kind::Clasp, {r, v}, {}}; }
    static FamilyDatum pretzel(i64 a, i64 b, i64 c) { return {Kind::Pretzel, {a, b, c}, {}}; }
    static FamilyDatum montf(i64 p, i64 q, i64 r, i64 s, i64 t, i64 u) { return {Kind::MontF, {p, q, r, s, t, u}, {}}; }
    static FamilyDatum g1(i64 k) { return {Kind::G1, {k}, {}}; }
    static FamilyDatum g2(i64 k) { return {Kind::G2, {k}, {}}; }
    static FamilyDatum sum(std::vector<FamilyDatum> parts) { return {Kind::ConnectedSum, {}, std::move(parts)}; }
    static FamilyDatum plus_o(FamilyDatum inner) { return {Kind::WithTrivialComponent, {}, {std::move(inner)}}; }

    const FamilyDatum& inner() const { return parts.at(0); }
    i64 p(std::size_t i) const { return params.at(i); }
};

// Total order: variant tag, then parameters, then parts, lexicographically.
int compare(const FamilyDatum& a, const FamilyDatum& b);
inline bool operator==(const FamilyDatum& a, const FamilyDatum& b) { return compare(a, b) == 0; }
inline bool operator<(const FamilyDatum& a, const FamilyDatum& b) { return compare(a, b) < 0; }

// Throws MalformedDatum on violated type invariants.
void validate(const FamilyDatum& d);

FamilyDatum parse_datum(const std::string& text);
std::string to_string(const FamilyDatum& d);

FamilyDatum normalize(const FamilyDatum& d);
FamilyDatum mirror(const FamilyDatum& d);
int components_of(const FamilyDatum& d);

// Crossings in the diagram built for d (the template size, not the MCN).
int template_crossings(const FamilyDatum& d);

// Rational tangles whose numerator closure is d, for the single-closure families.
// Returns false for Unknot, Unlink, ConnectedSum and WithTrivialComponent.
bool closure_tangles(const FamilyDatum& d, std::vector<Fraction>& out);

// Tangle-calculus reduction of d into split pieces of prime-ish summands.
ClosureForm closure_form(const FamilyDatum& d);

}  // namespace twistrec
