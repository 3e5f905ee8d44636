#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistrec/enumerator.hpp"

namespace twistrec {

struct CapTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 4 n^5 per family times 113 families.
i64 growth_bound(int n);
i64 family_bound(int n);

struct CountedIdentity {
    std::string name;      // oracle name; three-tangle Montesinos links get "montesinos[key]"
    int components = 1;
    FamilyDatum witness;
    std::string family;    // first term (in family order) producing it
};

struct CountReport {
    int n = 0;
    int distinct = 0;
    i64 bound = 0;
    std::map<std::string, int> per_family;  // term text -> distinct identities it reaches
    std::vector<CountedIdentity> witnesses;  // sorted by name
    int g1 = 0, g2 = 0;                      // identities reached by the G terms
};

struct CountOptions {
    bool chiral = false;          // count mirror pairs separately
    bool check_cap = true;        // throw CapTooSmall when the boundary reaches new identities
    bool theorem5 = false;        // count theorem5_products instead of the product families
};

// Reports for n = n_min..n_max from one pass over the instances with |letters| <= cap.
std::vector<CountReport> count_products(const Scenario& sc, int n_min, int n_max, i64 cap, const CountOptions& opt = {});

CountReport enumerate_products_at_mcn(const Scenario& sc, int n, i64 cap, const CountOptions& opt = {});
std::vector<CountReport> growth_curve(const Scenario& sc, int n_max, i64 cap, const CountOptions& opt = {});

// "n,distinct,bound,family,witness", one line per identity.
std::string to_csv(const std::vector<CountReport>& reports);

}  // namespace twistrec
