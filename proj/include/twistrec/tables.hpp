#pragma once

#include <string>
#include <vector>

#include "twistrec/enumerator.hpp"

namespace twistrec {

// Recombinase, substrate and product families, tab separated.
std::string table1();

// Theorem 5 case list, tab separated ("When", "L =", "for").
std::string table6();

struct Table7Row {
    std::string pattern;   // "F_S2(+-1, 1, 2, 4, +-1, 3)"
    std::string name;      // oracle name in table vocabulary ("Hopf link", "7_2^2")
    bool starred = false;  // MCN is the substrate's plus one
    std::string printed;   // the reference entry when it differs, else empty
};

// Rows for one substrate in reference order: S1/S3 splits with |s| < |u| only,
// repeated patterns dropped.
std::vector<Table7Row> table7_rows(i64 v);
std::string format_row(const Table7Row& r);
// Sections for C(2,5) and C(2,7).
std::string table7();

// "2_1^2" -> "Hopf link", "unlink_2" -> "unlink"; other names unchanged.
std::string table_name(const std::string& name);

}  // namespace twistrec
