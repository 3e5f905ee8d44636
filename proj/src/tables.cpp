#include "twistrec/tables.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "twistrec/identify.hpp"

namespace twistrec {

namespace {

// "F_S2(+-1,q,2,s,+-1,u)" -> "F_S2(+-1, q, 2, s, +-1, u)"
std::string spaced(const std::string& s) {
    std::string out;
    for (char c : s) {
        out += c;
        if (c == ',') out += ' ';
    }
    return out;
}

std::string when(int sign) { return sign > 0 ? "v > 0" : sign < 0 ? "v < 0" : "all v"; }

// Reference table entries, keyed by v and spaced pattern.
const std::map<std::pair<i64, std::string>, std::string>& printed_entries() {
    static const std::map<std::pair<i64, std::string>, std::string> m = {
        {{5, "C(2, 6)"}, "7_2*"},
        {{5, "C(2, -5)"}, "7_2*"},
        {{5, "C(-2, 5)"}, "7_2*"},
        {{5, "C(-2, -6)"}, "7_2*"},
        {{5, "C(3, 5)"}, "5_1^2"},
        {{5, "T(2, +-7)"}, "7_1*"},
        {{5, "F_S1(0, q, 2, 1, 2, 4)"}, "7_3^2*"},
        {{5, "F_S1(0, q, 2, 2, 2, 3)"}, "7_3^2*"},
        {{5, "F_S2(+-1, 1, 2, 1, +-1, 4)"}, "7_3*"},
        {{5, "F_S2(+-1, -1, 2, 1, +-1, 4)"}, "5_1"},
        {{5, "F_S2(+-1, 1, 2, 2, +-1, 3)"}, "7_2^2*"},
        {{5, "F_S2(+-1, -1, 2, 2, +-1, 3)"}, "unlink"},
        {{5, "F_S2(+-1, 1, 2, 3, +-1, 2)"}, "7_6*"},
        {{5, "F_S2(+-1, -1, 2, 3, +-1, 2)"}, "unknot"},
        {{5, "F_S2(+-1, 1, 2, 4, +-1, 1)"}, "7_3^2*"},
        {{5, "F_S2(+-1, -1, 2, 4, +-1, 1)"}, "Hopf link"},
        {{5, "F_S3(+-1, 0, 2, 1, 2, 4)"}, "5_2"},
        {{5, "F_S3(+-1, 0, 2, 2, 2, 3)"}, "3_1#4_1*"},
        {{7, "C(2, 8)"}, "9_2*"},
        {{7, "C(2, -7)"}, "9_2*"},
        {{7, "C(-2, 7)"}, "9_2*"},
        {{7, "C(-2, -8)"}, "9_2*"},
        {{7, "C(3, 7)"}, "9_1^2*"},
        {{7, "T(2, +-9)"}, "9_1*"},
        {{7, "F_S1(0, q, 2, 1, 2, 6)"}, "9_10^2*"},
        {{7, "F_S1(0, q, 2, 2, 2, 5)"}, "9_10^2*"},
        {{7, "F_S1(0, q, 2, 3, 2, 4)"}, "9_10^2*"},
        {{7, "F_S2(+-1, 1, 2, 1, +-1, 6)"}, "9_3*"},
        {{7, "F_S2(+-1, -1, 2, 1, +-1, 6)"}, "7_1"},
        {{7, "F_S2(+-1, 1, 2, 2, +-1, 5)"}, "7_2^2"},
        {{7, "F_S2(+-1, -1, 2, 2, +-1, 5)"}, "Hopf link"},
        {{7, "F_S2(+-1, 1, 2, 3, +-1, 4)"}, "9_11*"},
        {{7, "F_S2(+-1, -1, 2, 3, +-1, 4)"}, "5_2"},
        {{7, "F_S2(+-1, 1, 2, 4, +-1, 3)"}, "7_2^7"},
        {{7, "F_S2(+-1, -1, 2, 4, +-1, 3)"}, "5_1^2"},
        {{7, "F_S2(+-1, 1, 2, 5, +-1, 2)"}, "9_8*"},
        {{7, "F_S2(+-1, -1, 2, 5, +-1, 2)"}, "4_1"},
        {{7, "F_S2(+-1, 1, 2, 6, +-1, 1)"}, "9_10^2*"},
        {{7, "F_S2(+-1, -1, 2, 6, +-1, 1)"}, "Hopf link"},
        {{7, "F_S3(+-1, 0, 2, 1, 2, 6)"}, "7_2"},
        {{7, "F_S3(+-1, 0, 2, 2, 2, 5)"}, "6_1#3_1*"},
        {{7, "F_S3(+-1, 0, 2, 3, 2, 4)"}, "4_1#5_2*"},
    };
    return m;
}

// Printed entries list connected sums in either order.
std::string normalized_entry(const std::string& e) {
    bool star = !e.empty() && e.back() == '*';
    std::string n = star ? e.substr(0, e.size() - 1) : e;
    return canonical_name(n) + (star ? "*" : "");
}

}  // namespace

std::string table_name(const std::string& name) {
    if (name == "2_1^2") return "Hopf link";
    if (name == "unlink_2") return "unlink";
    return name;
}

std::string table1() {
    std::ostringstream os;
    os << "Recombinase type\tSubstrate\tProduct\n";
    for (Recombinase r : {Recombinase::Tyrosine, Recombinase::Serine}) {
        // Any admissible v gives the same theorem terms; the C1 and ladder refinements are omitted.
        auto terms = product_family({2, r, 1});
        bool first = true;
        for (const auto& t : terms) {
            std::string text;
            if (t.origin == "theorem1-G") text = "G1(k) or G2(k)";
            else if (t.origin.rfind("theorem", 0) == 0) {
                text = spaced(t.pattern);
                for (std::size_t i = 0; i < t.constraints.size(); ++i) text += (i ? ", " : " with ") + t.constraints[i];
                if (t.has_flag("hopf")) text += " (Hopf link)";
            } else continue;
            os << (first ? to_string(r) + "\tC(2, v)\t" : "\t\t") << text << "\n";
            first = false;
        }
    }
    return os.str();
}

std::string table6() {
    std::ostringstream os;
    os << "When\tL =\tfor\n";
    std::string prev;
    for (const auto& c : theorem5_cases()) {
        if (c.from_proof) continue;
        // Consecutive rows of one clasp or torus family print the family once.
        bool repeat = c.family == prev && c.family.rfind("F_", 0) != 0;
        os << when(c.sign) << "\t" << (repeat ? "" : spaced(c.family)) << "\t" << c.condition << "\n";
        prev = c.family;
    }
    return os.str();
}

std::vector<Table7Row> table7_rows(i64 v) {
    const int target = substrate_mcn(v) + 1;
    std::vector<Table7Row> rows;
    std::set<std::string> seen;
    for (const auto& p : theorem5_products(v)) {
        if (p.family.rfind("F_S1", 0) == 0 || p.family.rfind("F_S3", 0) == 0) {
            const auto& x = p.datum.params;
            if (std::abs(x[3]) >= std::abs(x[5])) continue;  // mirror-symmetric split already listed
        }
        std::string pattern = spaced(p.pattern);
        if (!seen.insert(pattern).second) continue;
        KnotIdentity id = identify_datum(p.datum);
        Table7Row row{pattern, table_name(canonical_name(id.name)), closure_form(p.datum).crossings() == target, ""};
        auto it = printed_entries().find({v, pattern});
        if (it != printed_entries().end()) {
            std::string ours = row.name + (row.starred ? "*" : "");
            if (normalized_entry(it->second) != normalized_entry(ours)) row.printed = it->second;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_row(const Table7Row& r) {
    std::string s = r.pattern + " = " + r.name + (r.starred ? "*" : "");
    if (!r.printed.empty()) s += " [printed: " + r.printed + "]";
    return s;
}

std::string table7() {
    std::ostringstream os;
    bool first = true;
    for (i64 v : {5, 7}) {
        if (!first) os << "\n";
        first = false;
        os << "Products with " << substrate_mcn(v) + 1 << " crossings\n";
        for (const auto& r : table7_rows(v)) os << format_row(r) << "\n";
    }
    return os.str();
}

}  // namespace twistrec
