#include "twistrec/counting.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "twistrec/identify.hpp"

namespace twistrec {

i64 family_bound(int n) {
    i64 p = 1;
    for (int i = 0; i < 5; ++i) p *= n;
    return 4 * p;
}

i64 growth_bound(int n) { return family_bound(n) * 113; }

namespace {

struct Seen {
    FamilyDatum witness;
    std::size_t first_term = 0;
    std::set<std::size_t> terms;
    bool interior = false;  // reached with every free letter strictly inside the cap
    bool g1 = false, g2 = false;
};

bool uses_g(const FamilyDatum& d, Kind k) {
    if (d.kind == k) return true;
    for (const auto& p : d.parts)
        if (uses_g(p, k)) return true;
    return false;
}

std::string identity_name(const FamilyDatum& d, const ClosureForm& cf, bool chiral, int& components) {
    KnotIdentity id = identify_datum(d);
    components = id.components;
    std::string name = id.identified() ? canonical_name(id.name) : "montesinos[" + (chiral ? closure_key(cf) : unoriented_closure_key(cf)) + "]";
    if (chiral && id.identified() && id.chirality != Chirality::Amphichiral) name += id.chirality == Chirality::Negative ? "(-)" : "(+)";
    return name;
}

}  // namespace

std::vector<CountReport> count_products(const Scenario& sc, int n_min, int n_max, i64 cap, const CountOptions& opt) {
    if (n_min < 0 || n_max < n_min) throw std::invalid_argument("count range must satisfy 0 <= n_min <= n_max");
    if (cap < 1) throw std::invalid_argument("cap must be positive");
    std::vector<std::string> term_text;
    // n -> closure key -> what reached it
    std::map<int, std::map<std::string, Seen>> found;
    auto visit = [&](const FamilyDatum& d, std::size_t term, bool interior) {
        ClosureForm cf = closure_form(d);
        int m = cf.crossings();
        if (m < n_min || m > n_max) return;
        std::string key = opt.chiral ? closure_key(cf) : unoriented_closure_key(cf);
        auto [it, fresh] = found[m].try_emplace(key);
        Seen& s = it->second;
        if (fresh) {
            s.witness = d;
            s.first_term = term;
        }
        s.terms.insert(term);
        s.interior = s.interior || interior;
        s.g1 = s.g1 || uses_g(d, Kind::G1);
        s.g2 = s.g2 || uses_g(d, Kind::G2);
    };
    if (opt.theorem5) {
        term_text.push_back("theorem5(v=" + std::to_string(sc.v) + ")");
        for (const auto& p : theorem5_products(sc.v)) visit(p.datum, 0, true);
    } else {
        auto terms = product_family(sc);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            term_text.push_back(terms[i].to_string());
            auto vars = terms[i].free_variables();
            for_each_instance(terms[i], cap, [&](const FamilyDatum& d, const std::array<i64, 6>& x) {
                bool interior = true;
                for (int v : vars)
                    if (x[static_cast<std::size_t>(v)] == cap || x[static_cast<std::size_t>(v)] == -cap) interior = false;
                visit(d, i, interior);
            });
        }
    }
    std::vector<CountReport> out;
    for (int n = n_min; n <= n_max; ++n) {
        CountReport r;
        r.n = n;
        r.bound = growth_bound(n);
        std::map<std::pair<std::string, int>, std::pair<std::size_t, CountedIdentity>> ids;
        std::map<std::size_t, std::set<std::string>> per_term;
        std::set<std::string> g1_ids, g2_ids;
        for (const auto& [key, s] : found[n]) {
            if (opt.check_cap && !s.interior)
                throw CapTooSmall("cap " + std::to_string(cap) + " too small: " + to_string(s.witness) +
                                  " reaches MCN " + std::to_string(n) + " only on the boundary");
            int comps = 1;
            std::string name = identity_name(s.witness, closure_form(s.witness), opt.chiral, comps);
            auto it = ids.find({name, comps});
            if (it == ids.end() || s.first_term < it->second.first)
                ids[{name, comps}] = {s.first_term, {name, comps, s.witness, term_text[s.first_term]}};
            std::string id_key = name + "/" + std::to_string(comps);
            for (auto t : s.terms) per_term[t].insert(id_key);
            if (s.g1) g1_ids.insert(id_key);
            if (s.g2) g2_ids.insert(id_key);
        }
        for (auto& [k, id] : ids) r.witnesses.push_back(id.second);
        r.distinct = static_cast<int>(r.witnesses.size());
        for (const auto& [t, names] : per_term) r.per_family[term_text[t]] = static_cast<int>(names.size());
        r.g1 = static_cast<int>(g1_ids.size());
        r.g2 = static_cast<int>(g2_ids.size());
        if (r.distinct > r.bound) throw std::logic_error("distinct identities exceed 452 n^5 at n = " + std::to_string(n));
        out.push_back(std::move(r));
    }
    return out;
}

CountReport enumerate_products_at_mcn(const Scenario& sc, int n, i64 cap, const CountOptions& opt) {
    return count_products(sc, n, n, cap, opt).front();
}

std::vector<CountReport> growth_curve(const Scenario& sc, int n_max, i64 cap, const CountOptions& opt) {
    if (n_max < 2) throw std::invalid_argument("growth curve needs n_max >= 2");
    auto reports = count_products(sc, 2, n_max, cap, opt);
    for (std::size_t i = 1; i < reports.size(); ++i)
        if (reports[i].bound < reports[i - 1].bound) throw std::logic_error("bound column is not monotone");
    return reports;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace

std::string to_csv(const std::vector<CountReport>& reports) {
    std::ostringstream os;
    os << "n,distinct,bound,family,witness\n";
    for (const auto& r : reports) {
        if (r.witnesses.empty()) os << r.n << "," << r.distinct << "," << r.bound << ",,\n";
        for (const auto& w : r.witnesses)
            os << r.n << "," << r.distinct << "," << r.bound << "," << csv_field(w.family) << ","
               << csv_field(to_string(w.witness)) << "\n";
    }
    return os.str();
}

}  // namespace twistrec
