#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistrec/datum.hpp"
#include "twistrec/diagram.hpp"
#include "twistrec/laurent.hpp"
#include "twistrec/tangle.hpp"

namespace twistrec {

enum class Chirality { Positive, Negative, Amphichiral, Unknown };
std::string to_string(Chirality c);

struct KnotIdentity {
    std::string name;  // "7_2", "9_1^2", "3_1#4_1", "unknot", "unlink_2", "5_2+O", "unidentified"
    Chirality chirality = Chirality::Unknown;
    int components = 1;
    std::vector<std::string> alternatives;  // other names with the same invariants, if any
    LaurentPoly bracket_key;                 // bracket up to units, for unidentified results

    bool identified() const { return name != "unidentified"; }
    bool operator==(const KnotIdentity& o) const { return name == o.name && chirality == o.chirality && components == o.components; }
};

// Unit-normalized bracket of the mirror-chosen representative: smaller of the two keys.
LaurentPoly unoriented_key(const LaurentPoly& bracket);

struct DictEntry {
    std::string name;
    TwoBridge bridge;      // reference representative, p/q as listed
    int components = 1;
    bool amphichiral = false;
    LaurentPoly key;       // unit-normalized bracket of the reference diagram
    LaurentPoly mirror_key;
};

// Startup dictionary: 2-bridge table plus T(2,m) for m <= 13.
class Dictionary {
public:
    static const Dictionary& instance();

    const std::vector<DictEntry>& entries() const { return entries_; }
    const DictEntry* by_bridge(const TwoBridge& b) const;  // unoriented lookup
    const DictEntry* by_name(const std::string& name) const;
    // Entries whose key or mirror key equals k with the given component count.
    std::vector<const DictEntry*> by_key(const LaurentPoly& k, int components) const;
    const std::vector<std::pair<std::string, std::string>>& collisions() const { return collisions_; }

private:
    Dictionary();
    std::vector<DictEntry> entries_;
    std::map<TwoBridge, std::size_t> by_bridge_;
    std::vector<std::pair<std::string, std::string>> collisions_;
};

// Bracket-based lookup of a diagram.
KnotIdentity identify(const PlanarDiagram& d, int limit);
inline KnotIdentity identify(const PlanarDiagram& d) { return identify(d, oracle_limit()); }

// Identify from invariants already computed.
KnotIdentity identify_invariants(const LaurentPoly& bracket, int components);

// Tangle-calculus route: names the reduced closure form directly.  Montesinos
// summands with three or more tangles have no table name and yield "unidentified".
KnotIdentity identify_closure(const ClosureForm& cf);

// Builds the template diagram and identifies it by its invariants; when the
// invariants are ambiguous, 2-bridge fractions from the closure form decide.
KnotIdentity identify_datum(const FamilyDatum& d, int limit);
inline KnotIdentity identify_datum(const FamilyDatum& d) { return identify_datum(d, oracle_limit()); }

// Multiset comparison of names, treating connected-sum summand order as irrelevant.
std::string canonical_name(const std::string& name);

std::string describe(const KnotIdentity& id);  // "3_1 (+), 1 component"

}  // namespace twistrec
