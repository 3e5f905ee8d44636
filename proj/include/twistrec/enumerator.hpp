#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistrec/datum.hpp"
#include "twistrec/diagram.hpp"
#include "twistrec/laurent.hpp"
#include "twistrec/mcn.hpp"

namespace twistrec {

struct InvalidScenario : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Recombinase { Tyrosine, Serine };
std::string to_string(Recombinase r);
Recombinase parse_recombinase(const std::string& s);

// Substrate C(2,v) acted on by one recombinase; rounds counts serine processive rounds.
struct Scenario {
    i64 v = 0;
    Recombinase recombinase = Recombinase::Tyrosine;
    int rounds = 1;

    // "substrate=C(2,v) recombinase=tyrosine|serine rounds=N"; rounds is optional.
    static Scenario parse(const std::string& line);
    std::string to_string() const;
};

// Substrate parameter from "C(2,v)".
i64 parse_substrate(const std::string& text);

enum class ComplementForm { C1, C2, C3, C4, C5 };
enum class SynapseForm { B1, B2, B3, B4, B5, B6, B7, B8, N1, N2 };
std::string to_string(ComplementForm c);
std::string to_string(SynapseForm b);
// Pre-recombinant synapse forms that fit each complement form.
std::vector<SynapseForm> compatible_synapses(ComplementForm c);
bool compatible(ComplementForm c, SynapseForm b);

// A product family: a datum pattern over the letters p..u (v is the substrate
// row), with integer constraints on the free letters.
//
// Text form:  <pattern> where <c1>; <c2> [v=<v>; origin=<o>; round=<n>; flags=<f1>,<f2>]
struct ConstraintTerm {
    std::string pattern;                  // "F(p,q,r,s,t,u)", "T(2,r)#C(2,s)", "G1(3)"
    std::vector<std::string> constraints;  // Expr text, all must hold
    i64 v = 0;
    std::string origin;                   // "theorem1", "theorem2", "C1", "ladder"
    int round = 0;                        // serine ladder round, 0 otherwise
    std::vector<std::string> flags;       // "suspect", "figure-derived", "q-free", ...

    std::string to_string() const;
    static ConstraintTerm parse(const std::string& text);
    bool has_flag(const std::string& f) const;
    // Free letters of the pattern, as indices into p..u.
    std::vector<int> free_variables() const;
    // Datum for an assignment of the free letters (others ignored); nullopt if the
    // substituted text is not a valid datum.
    std::optional<FamilyDatum> at(const std::array<i64, 6>& x) const;
    bool holds(const std::array<i64, 6>& x) const;
};

// Every valid datum of the term with free letters in [-cap, cap], sorted, no duplicates.
std::vector<FamilyDatum> instantiate(const ConstraintTerm& term, i64 cap);

// Visits the same assignments without materializing them; x holds the free letters.
using InstanceVisitor = std::function<void(const FamilyDatum& d, const std::array<i64, 6>& x)>;
void for_each_instance(const ConstraintTerm& term, i64 cap, const InstanceVisitor& fn);

// Ladder crossing-row option: Assumption-style "n-1, n or n+1" crossings after n rounds.
enum class RowCount { Fewer = -1, Exact = 0, More = 1 };

std::vector<ConstraintTerm> tyrosine_product_family(i64 v);
std::vector<ConstraintTerm> serine_product_family(i64 v, int rounds, RowCount row = RowCount::Exact);
std::vector<ConstraintTerm> product_family(const Scenario& sc);

// The knot or link a membership query is about.  form is set when the target is a
// family datum, and then decides exactly; otherwise the bracket decides.
struct ProductTarget {
    std::string label;
    std::optional<ClosureForm> form;
    LaurentPoly bracket;  // unit-normalized
    int components = 1;
    int crossing_bound = 0;  // upper bound on the MCN

    static ProductTarget from_datum(const FamilyDatum& d);
    static ProductTarget from_diagram(const PlanarDiagram& d, const std::string& label);
};

struct Membership {
    bool member = false;
    std::string term;              // matching constraint term
    std::optional<FamilyDatum> witness;
    i64 cap = 0;                   // parameter range searched
};

// Searches every term's instances with |parameters| <= cap (default: the target's
// crossing bound) for one equal to the target, mirror images distinguished.
Membership membership(const ProductTarget& target, const Scenario& sc, i64 cap = 0);
// True iff the target matches no term of either recombinase.
bool requires_distributive(const ProductTarget& target, i64 v, i64 cap = 0);

// One line of the Theorem 5 case list.
struct Theorem5Case {
    int sign;                // +1: v > 0, -1: v < 0, 0: every v
    std::string family;      // "C(2,n)", "F_S2(+-1,q,2,s,+-1,u)"
    std::string condition;   // "n = 1 + v or -v"
    bool from_proof = false;  // established in the proof, absent from the summary table
};
const std::vector<Theorem5Case>& theorem5_cases();

struct Theorem5Product {
    FamilyDatum datum;
    std::string family;  // the case it came from
    std::string pattern;  // row as printed, with +- kept: "F_S2(+-1,1,2,1,+-1,4)"
};

// Products allowed when the MCN goes up by one.  Rejects v = 0 and v = 1.
std::vector<Theorem5Product> theorem5_products(i64 v);

int substrate_mcn(i64 v);  // MCN of C(2,v)

// One identified product class.
struct IdentifiedProduct {
    std::string name;        // oracle name, mirror pairs merged
    int components = 1;
    int mcn = 0;             // from the certified tangle reduction
    std::string key;         // unoriented closure key
    FamilyDatum witness;
    std::vector<std::string> patterns;
};

// Identifies and deduplicates theorem5_products(v); starred = MCN equals substrate + 1.
std::vector<IdentifiedProduct> theorem5_identified(i64 v, bool starred_only);

}  // namespace twistrec
