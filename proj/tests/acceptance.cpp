// Acceptance run: one PASS/FAIL line per criterion on stdout, details on stderr.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "twistrec/counting.hpp"
#include "twistrec/enumerator.hpp"
#include "twistrec/identify.hpp"
#include "twistrec/mcn.hpp"
#include "twistrec/moves.hpp"
#include "twistrec/tables.hpp"

using namespace twistrec;

namespace {

constexpr double kTheorem5Seconds = 10.0;
constexpr double kMcnSweepSeconds = 300.0;
constexpr int kMovesPerDatum = 10;
constexpr i64 kCap = 10;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : " ") + x;
    return out;
}

PlanarDiagram pd_file(const std::string& name) {
    return parse_pd(oracle::read_file(std::string(TWISTREC_TEST_DIR) + "/data/" + name + ".pd"));
}

struct Result {
    bool pass = false;
    std::string summary;
};

Result table7_sets() {
    auto t0 = Clock::now();
    const std::set<std::string> want7 = {"7_1", "7_2", "7_3", "7_6", "7_2^2", "7_3^2", "3_1#4_1"};
    std::set<std::string> want9;
    for (const char* n : {"9_1", "9_2", "9_3", "9_8", "9_11", "9_1^2", "9_10^2", "6_1#3_1", "4_1#5_2"}) want9.insert(canonical_name(n));
    std::set<std::string> got7, got9;
    for (const auto& g : theorem5_identified(5, true)) got7.insert(g.name);
    for (const auto& g : theorem5_identified(7, true)) got9.insert(g.name);
    double secs = since(t0);
    auto diff = [](const std::set<std::string>& got, const std::set<std::string>& want) {
        std::set<std::string> extra, missing;
        for (const auto& x : got)
            if (!want.count(x)) extra.insert(x);
        for (const auto& x : want)
            if (!got.count(x)) missing.insert(x);
        return "extra {" + join(extra) + "} missing {" + join(missing) + "}";
    };
    std::cerr << "  C(2,5) starred: " << join(got7) << "\n  C(2,7) starred: " << join(got9) << "\n";
    bool ok = got7 == want7 && got9 == want9 && secs < kTheorem5Seconds;
    std::ostringstream s;
    s << "C(2,5): " << got7.size() << " names, " << diff(got7, want7) << "; C(2,7): " << got9.size() << " names, "
      << diff(got9, want9) << "; " << secs << " s";
    return {ok, s.str()};
}

Result table6_golden() {
    std::string golden = oracle::read_file(std::string(TWISTREC_TEST_DIR) + "/golden/table6.txt");
    std::string ours = table6();
    if (ours != golden) std::cerr << "  generated:\n" << ours << "  golden:\n" << golden;
    return {ours == golden, ours == golden ? "byte-identical to golden" : "differs from golden"};
}

Result mcn_sweep() {
    auto t0 = Clock::now();
    long clasp_checked = 0, clasp_bad = 0;
    for (i64 r : {-4, -3, -2, 2, 3, 4})
        for (i64 v = -6; v <= 6; ++v) {
            if (v == 0) continue;
            ++clasp_checked;
            OracleMcn o = oracle_mcn(FamilyDatum::clasp(r, v));
            int m = mcn_clasp(r, v);
            if (!o.exact() || o.lo != m) {
                ++clasp_bad;
                std::cerr << "  C(" << r << "," << v << "): formula " << m << ", oracle [" << o.lo << "," << o.hi << "]\n";
            }
        }
    long checked = 0, unexplained = 0, suspect = 0, oracle_open = 0;
    std::map<std::string, long> by_rule;
    std::map<std::string, std::string> sample;
    for (i64 p = -3; p <= 3; ++p)
        for (i64 q = -3; q <= 3; ++q)
            for (i64 r = -3; r <= 3; ++r)
                for (i64 s = -3; s <= 3; ++s)
                    for (i64 t = -3; t <= 3; ++t)
                        for (i64 u = -3; u <= 3; ++u) {
                            FamilyDatum d = FamilyDatum::montf(p, q, r, s, t, u);
                            if (template_crossings(d) > 18) continue;
                            ++checked;
                            McnF m = mcn_F(p, q, r, s, t, u);
                            OracleMcn o = oracle_mcn(d);
                            if (!o.exact()) ++oracle_open;
                            // Rule value: the row's own expression (or the formula it delegates to).
                            int value = m.exact ? m.value : m.rule_value;
                            int tol = m.exact ? 0 : std::max(1, m.tolerance);
                            bool bad = o.lo > value + tol || o.hi < value - tol;
                            if (!bad) continue;
                            if (m.suspect) {
                                ++suspect;
                                continue;
                            }
                            ++unexplained;
                            ++by_rule[m.rule_id];
                            if (!sample.count(m.rule_id))
                                sample[m.rule_id] = to_string(d) + " rule " + std::to_string(value) + " oracle " + std::to_string(o.lo) +
                                                    (o.exact() ? "" : ".." + std::to_string(o.hi));
                        }
    double secs = since(t0);
    for (const auto& [id, n] : by_rule) std::cerr << "  " << id << ": " << n << " mismatches, e.g. " << sample[id] << "\n";
    std::ostringstream s;
    s << "clasp " << clasp_checked - clasp_bad << "/" << clasp_checked << " exact; F " << checked << " data, " << unexplained
      << " unexplained mismatches over " << by_rule.size() << " rows, " << suspect << " on suspect rows, " << oracle_open
      << " oracle intervals; " << secs << " s";
    return {clasp_bad == 0 && unexplained == 0 && secs < kMcnSweepSeconds, s.str()};
}

Result exclusion() {
    bool ok = true;
    std::ostringstream s;
    // The claims hold for every substrate; a few are sampled.
    const std::vector<i64> substrates = {-3, 2, 5};
    auto check = [&](const std::string& label, const ProductTarget& target, Recombinase rec, bool expect) {
        bool any = false;
        std::string how;
        for (i64 v : substrates) {
            Membership m = membership(target, {v, rec, 1});
            if (m.member && !any) {
                any = true;
                how = m.witness ? to_string(*m.witness) : m.term;
                // Second route: the state-sum Jones of the witness against the target diagram.
                if (m.witness && !target.form) {
                    LaurentPoly a = oracle::jones(build_diagram(*m.witness));
                    PlanarDiagram pd = pd_file(label);
                    LaurentPoly b = oracle::jones(pd);
                    how += (a == b || a == b.inverted()) ? " (jones confirmed)" : " (jones disagrees)";
                }
            }
        }
        bool pass = any == expect;
        ok = ok && pass;
        s << label << "/" << to_string(rec) << "=" << (any ? "member" : "excluded") << (pass ? "" : "!") << " ";
        if (any) std::cerr << "  " << label << " under " << to_string(rec) << ": witness " << how << "\n";
    };
    for (const char* k : {"8_18", "10_141"}) {
        ProductTarget t = ProductTarget::from_diagram(pd_file(k), k);
        check(k, t, Recombinase::Tyrosine, false);
        check(k, t, Recombinase::Serine, false);
    }
    ProductTarget k811 = ProductTarget::from_diagram(pd_file("8_11"), "8_11");
    check("8_11", k811, Recombinase::Tyrosine, false);
    check("8_11", k811, Recombinase::Serine, true);
    FamilyDatum printed = parse_datum("F(2,2,2,-1,-3,0)");
    LaurentPoly jp = oracle::jones(build_diagram(printed)), j811 = oracle::jones(pd_file("8_11"));
    std::cerr << "  F(2,2,2,-1,-3,0) identifies as " << identify_datum(printed).name << ", jones "
              << (jp == j811 || jp == j811.inverted() ? "equals" : "differs from") << " 8_11\n";
    return {ok, s.str()};
}

Result growth() {
    bool ok = true;
    std::ostringstream s;
    struct Run {
        i64 v;
        Recombinase rec;
    };
    for (Run run : {Run{5, Recombinase::Tyrosine}, Run{-4, Recombinase::Tyrosine}, Run{5, Recombinase::Serine}}) {
        Scenario sc{run.v, run.rec, 1};
        std::vector<CountReport> a, b;
        try {
            a = growth_curve(sc, 8, kCap);
            b = growth_curve(sc, 8, kCap + 2);
        } catch (const std::exception& e) {
            ok = false;
            s << sc.to_string() << ": " << e.what() << "; ";
            continue;
        }
        bool stable = true, bounded = true, g_ok = true;
        std::string counts;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::set<std::string> na, nb;
            for (const auto& w : a[i].witnesses) na.insert(w.name + "/" + std::to_string(w.components));
            for (const auto& w : b[i].witnesses) nb.insert(w.name + "/" + std::to_string(w.components));
            stable = stable && na == nb;
            bounded = bounded && a[i].distinct <= a[i].bound;
            g_ok = g_ok && a[i].g1 <= 1 && a[i].g2 <= 1;
            counts += (i ? "," : "") + std::to_string(a[i].distinct);
            if (a[i].g1 || a[i].g2) std::cerr << "  " << sc.to_string() << " n=" << a[i].n << ": G1 " << a[i].g1 << ", G2 " << a[i].g2 << "\n";
        }
        ok = ok && stable && bounded && g_ok;
        s << "v=" << run.v << " " << to_string(run.rec) << " n2..8 [" << counts << "]" << (stable ? "" : " unstable")
          << (bounded ? "" : " over-bound") << (g_ok ? "" : " G>1") << "; ";
    }
    return {ok, s.str()};
}

std::vector<FamilyDatum> invariance_grid() {
    std::vector<FamilyDatum> grid;
    for (i64 r : {-4, -3, -2, 2, 3, 4})
        for (i64 v = -4; v <= 4; ++v)
            if (v != 0) grid.push_back(FamilyDatum::clasp(r, v));
    for (i64 m = -6; m <= 6; ++m)
        if (std::llabs(m) >= 2) grid.push_back(FamilyDatum::torus(m));
    for (i64 k = 0; k <= 3; ++k) {
        grid.push_back(FamilyDatum::g1(k));
        grid.push_back(FamilyDatum::g2(k));
    }
    for (i64 p = -1; p <= 1; ++p)
        for (i64 q = -1; q <= 1; ++q)
            for (i64 r = -2; r <= 2; ++r)
                for (i64 s = -1; s <= 1; ++s)
                    for (i64 t = -2; t <= 2; ++t)
                        for (i64 u = -1; u <= 1; ++u) {
                            FamilyDatum d = FamilyDatum::montf(p, q, r, s, t, u);
                            if (template_crossings(d) <= 9) grid.push_back(d);
                        }
    return grid;
}

Result invariance() {
    std::mt19937_64 rng(20240611);
    long data = 0, moves = 0, failures = 0;
    std::map<Move, long> kinds;
    for (const auto& d : invariance_grid()) {
        PlanarDiagram pd = build_diagram(d);
        const LaurentPoly j = jones(pd);
        const int limit = pd.size() + 4;
        ++data;
        for (int i = 0; i < kMovesPerDatum; ++i) {
            auto m = random_move(pd, rng, limit);
            if (!m) continue;
            ++moves;
            ++kinds[*m];
            if (jones(pd) != j) {
                ++failures;
                std::cerr << "  " << to_string(d) << ": jones changed after " << to_string(*m) << "\n";
                break;
            }
        }
    }
    // Connected sums, mirrors, and the amphichiral figure-eight.
    long sums = 0, sum_fail = 0, mirrors = 0, mirror_fail = 0;
    const std::vector<FamilyDatum> small = {FamilyDatum::clasp(2, -1), FamilyDatum::clasp(2, -2), FamilyDatum::torus(5),
                                            FamilyDatum::torus(-4), FamilyDatum::clasp(3, 2), FamilyDatum::montf(1, 1, 2, 1, 1, 2),
                                            FamilyDatum::g1(1)};
    for (const auto& a : small) {
        ++mirrors;
        if (jones(build_diagram(mirror(a))) != jones(build_diagram(a)).inverted()) {
            ++mirror_fail;
            std::cerr << "  mirror of " << to_string(a) << ": jones not inverted\n";
        }
        for (const auto& b : small) {
            ++sums;
            LaurentPoly js = jones(build_diagram(FamilyDatum::sum({a, b})));
            if (js != jones(build_diagram(a)) * jones(build_diagram(b))) {
                ++sum_fail;
                std::cerr << "  " << to_string(a) << " # " << to_string(b) << ": jones not multiplicative\n";
            }
        }
    }
    LaurentPoly fig8 = jones(build_diagram(FamilyDatum::clasp(2, -2)));
    LaurentPoly fig8_pd = jones(pd_file("4_1"));
    bool palindrome = fig8 == fig8.inverted() && fig8_pd == fig8;
    std::string kind_text;
    for (auto [k, n] : kinds) kind_text += " " + to_string(k) + ":" + std::to_string(n);
    std::ostringstream s;
    s << data << " data, " << moves << " moves (" << kind_text.substr(1) << "), " << failures << " failures; sums " << sums - sum_fail << "/"
      << sums << "; mirrors " << mirrors - mirror_fail << "/" << mirrors << "; 4_1 palindromic " << (palindrome ? "yes" : "no");
    return {failures == 0 && sum_fail == 0 && mirror_fail == 0 && palindrome && moves >= data * kMovesPerDatum / 2, s.str()};
}

Result substrate_law() {
    int bad = 0;
    for (i64 v = -10; v <= 10; ++v) {
        if (v == 0 || v == 1) continue;
        int want = v < 0 ? 2 + static_cast<int>(-v) : 1 + static_cast<int>(v);
        if (mcn(FamilyDatum::clasp(2, v)) != want || substrate_mcn(v) != want) {
            ++bad;
            std::cerr << "  C(2," << v << "): " << mcn(FamilyDatum::clasp(2, v)) << " != " << want << "\n";
        }
    }
    return {bad == 0, std::to_string(19 - bad) + "/19 substrates exact"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Result()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "Table 7 starred sets", table7_sets},
        {2, "Table 6 case list", table6_golden},
        {3, "MCN rules vs oracle", mcn_sweep},
        {4, "exclusion results", exclusion},
        {5, "growth bound", growth},
        {6, "oracle invariance", invariance},
        {7, "substrate MCN law", substrate_law},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (r.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << ": " << r.summary << std::endl;
        if (!r.pass) ++failed;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
