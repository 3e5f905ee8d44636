#include "twistrec/enumerator.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "twistrec/identify.hpp"

namespace twistrec {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

bool is_param_letter(char c) { return c >= 'p' && c <= 'u'; }

// Single lowercase letters standing alone; "unknot" and "unlink" are words, not letters.
template <class F>
std::string map_letters(const std::string& pattern, F&& fn) {
    std::string out;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        char c = pattern[i];
        bool alone = std::islower(static_cast<unsigned char>(c)) &&
                     (i == 0 || !std::isalpha(static_cast<unsigned char>(pattern[i - 1]))) &&
                     (i + 1 == pattern.size() || !std::isalpha(static_cast<unsigned char>(pattern[i + 1])));
        out += alone ? fn(c) : std::string(1, c);
    }
    return out;
}

}  // namespace

std::string to_string(Recombinase r) { return r == Recombinase::Tyrosine ? "tyrosine" : "serine"; }

Recombinase parse_recombinase(const std::string& s) {
    if (s == "tyrosine") return Recombinase::Tyrosine;
    if (s == "serine") return Recombinase::Serine;
    throw InvalidScenario("recombinase must be tyrosine or serine, got '" + s + "'");
}

i64 parse_substrate(const std::string& text) {
    FamilyDatum d;
    try {
        d = parse_datum(text);
    } catch (const std::exception& e) {
        throw InvalidScenario("substrate: " + std::string(e.what()));
    }
    if (d.kind != Kind::Clasp || d.params[0] != 2) throw InvalidScenario("substrate must be C(2,v), got " + text);
    return d.params[1];
}

Scenario Scenario::parse(const std::string& line) {
    Scenario sc;
    bool have_sub = false, have_rec = false;
    for (const auto& tok : split(line, ' ')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw InvalidScenario("expected key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "substrate") {
            sc.v = parse_substrate(val);
            have_sub = true;
        } else if (key == "recombinase") {
            sc.recombinase = parse_recombinase(val);
            have_rec = true;
        } else if (key == "rounds") {
            try {
                std::size_t used = 0;
                sc.rounds = std::stoi(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
            } catch (const std::exception&) {
                throw InvalidScenario("rounds must be an integer, got '" + val + "'");
            }
        } else {
            throw InvalidScenario("unknown scenario key '" + key + "'");
        }
    }
    if (!have_sub || !have_rec) throw InvalidScenario("scenario needs substrate= and recombinase=");
    if (sc.rounds < 1) throw InvalidScenario("rounds must be at least 1");
    if (sc.recombinase == Recombinase::Tyrosine && sc.rounds != 1) throw InvalidScenario("tyrosine scenarios have one round");
    return sc;
}

std::string Scenario::to_string() const {
    return "substrate=C(2," + std::to_string(v) + ") recombinase=" + twistrec::to_string(recombinase) +
           " rounds=" + std::to_string(rounds);
}

std::string to_string(ComplementForm c) { return "C" + std::to_string(static_cast<int>(c) + 1); }

std::string to_string(SynapseForm b) {
    if (b == SynapseForm::N1) return "n1";
    if (b == SynapseForm::N2) return "n2";
    return "B" + std::to_string(static_cast<int>(b) + 1);
}

std::vector<SynapseForm> compatible_synapses(ComplementForm c) {
    using S = SynapseForm;
    switch (c) {
        case ComplementForm::C1: return {S::B1};
        case ComplementForm::C2: return {S::B1, S::B3, S::B4};
        case ComplementForm::C3: return {S::B2, S::B3, S::B4};
        case ComplementForm::C4: return {S::B1};
        case ComplementForm::C5: return {S::B3, S::B4};
    }
    return {};
}

bool compatible(ComplementForm c, SynapseForm b) {
    auto v = compatible_synapses(c);
    return std::find(v.begin(), v.end(), b) != v.end();
}

// ---------------------------------------------------------------- constraint terms

std::string ConstraintTerm::to_string() const {
    std::string s = pattern;
    if (!constraints.empty()) {
        s += " where ";
        for (std::size_t i = 0; i < constraints.size(); ++i) s += (i ? "; " : "") + constraints[i];
    }
    s += " [v=" + std::to_string(v) + "; origin=" + origin + "; round=" + std::to_string(round) + "; flags=";
    for (std::size_t i = 0; i < flags.size(); ++i) s += (i ? "," : "") + flags[i];
    return s + "]";
}

ConstraintTerm ConstraintTerm::parse(const std::string& text) {
    ConstraintTerm t;
    auto lb = text.rfind('[');
    if (lb == std::string::npos || text.back() != ']') throw std::invalid_argument("constraint term needs a [..] trailer");
    std::string head = trim(text.substr(0, lb));
    std::string meta = text.substr(lb + 1, text.size() - lb - 2);
    auto w = head.find(" where ");
    t.pattern = trim(head.substr(0, w));
    if (w != std::string::npos) t.constraints = split(head.substr(w + 7), ';');
    for (const auto& kv : split(meta, ';')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad term field '" + kv + "'");
        std::string k = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (k == "v") t.v = std::stoll(val);
        else if (k == "origin") t.origin = val;
        else if (k == "round") t.round = std::stoi(val);
        else if (k == "flags") t.flags = split(val, ',');
        else throw std::invalid_argument("unknown term field '" + k + "'");
    }
    for (const auto& c : t.constraints) Expr::parse(c);
    return t;
}

bool ConstraintTerm::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::vector<int> ConstraintTerm::free_variables() const {
    std::set<int> vs;
    map_letters(pattern, [&](char c) {
        if (is_param_letter(c)) vs.insert(c - 'p');
        return std::string(1, c);
    });
    return {vs.begin(), vs.end()};
}

namespace {

constexpr i64 kSlot = 1'000'000'000'000;  // placeholder value marking letter i as kSlot + i

// The pattern parsed once, with letters left as placeholders.
struct Compiled {
    FamilyDatum shape;
};

Compiled compile(const ConstraintTerm& t) {
    std::string text = map_letters(t.pattern, [&](char c) {
        if (is_param_letter(c)) return std::to_string(kSlot + (c - 'p'));
        if (c == 'v') return std::to_string(t.v);
        return std::string(1, c);
    });
    Compiled c;
    c.shape = parse_datum(text);
    return c;
}

void fill(FamilyDatum& d, const std::array<i64, 6>& x) {
    for (auto& p : d.params)
        if (p >= kSlot && p < kSlot + 6) p = x[static_cast<std::size_t>(p - kSlot)];
    for (auto& q : d.parts) fill(q, x);
}

std::optional<FamilyDatum> instance(const Compiled& c, const std::array<i64, 6>& x) {
    FamilyDatum d = c.shape;
    fill(d, x);
    try {
        validate(d);
    } catch (const MalformedDatum&) {
        return std::nullopt;
    }
    return d;
}

}  // namespace

std::optional<FamilyDatum> ConstraintTerm::at(const std::array<i64, 6>& x) const {
    return instance(compile(*this), x);
}

bool ConstraintTerm::holds(const std::array<i64, 6>& x) const {
    for (const auto& c : constraints)
        if (!Expr::parse(c).eval(x, v)) return false;
    return true;
}

namespace {

struct Plan {
    Compiled pattern;
    std::vector<int> vars;
    std::vector<std::vector<i64>> domains;
    // Constraints to test once the first k variables are set.
    std::vector<std::vector<Expr>> checks;
};

Plan make_plan(const ConstraintTerm& term, i64 cap) {
    Plan plan;
    plan.pattern = compile(term);
    plan.vars = term.free_variables();
    std::vector<Expr> exprs;
    for (const auto& c : term.constraints) exprs.push_back(Expr::parse(c));
    unsigned free_mask = 0;
    for (int v : plan.vars) free_mask |= 1u << v;
    for (const auto& e : exprs)
        if (e.variables() & 0x3Fu & ~free_mask)
            throw std::invalid_argument("constraint '" + e.text() + "' names a letter absent from " + term.pattern);
    plan.checks.assign(plan.vars.size() + 1, {});
    for (std::size_t k = 0; k < plan.vars.size(); ++k) {
        unsigned own = 1u << plan.vars[k];
        std::vector<i64> dom;
        for (i64 x = -cap; x <= cap; ++x) {
            std::array<i64, 6> a{};
            a[static_cast<std::size_t>(plan.vars[k])] = x;
            bool ok = true;
            for (const auto& e : exprs)
                if ((e.variables() & 0x3Fu) == own && !e.eval(a, term.v)) ok = false;
            if (ok) dom.push_back(x);
        }
        plan.domains.push_back(std::move(dom));
    }
    for (const auto& e : exprs) {
        unsigned m = e.variables() & 0x3Fu;
        if (std::popcount(m) == 1) continue;  // pruned into the domain
        std::size_t last = 0;
        for (std::size_t k = 0; k < plan.vars.size(); ++k)
            if (m & (1u << plan.vars[k])) last = k + 1;
        plan.checks[last].push_back(e);
    }
    return plan;
}

void walk(const ConstraintTerm& term, const Plan& plan, std::size_t k, std::array<i64, 6>& x, const InstanceVisitor& fn) {
    for (const auto& e : plan.checks[k])
        if (!e.eval(x, term.v)) return;
    if (k == plan.vars.size()) {
        if (auto d = instance(plan.pattern, x)) fn(*d, x);
        return;
    }
    for (i64 val : plan.domains[k]) {
        x[static_cast<std::size_t>(plan.vars[k])] = val;
        walk(term, plan, k + 1, x, fn);
    }
}

}  // namespace

void for_each_instance(const ConstraintTerm& term, i64 cap, const InstanceVisitor& fn) {
    Plan plan = make_plan(term, cap);
    std::array<i64, 6> x{};
    walk(term, plan, 0, x, fn);
}

std::vector<FamilyDatum> instantiate(const ConstraintTerm& term, i64 cap) {
    Plan plan = make_plan(term, cap);
    std::vector<FamilyDatum> out;
    if (plan.vars.empty()) {
        std::array<i64, 6> x{};
        walk(term, plan, 0, x, [&](const FamilyDatum& d, const std::array<i64, 6>&) { out.push_back(d); });
        return out;
    }
    // Split the first variable's range across workers; each works on its own slice.
    const auto& first = plan.domains[0];
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(first.size())));
    std::vector<std::future<std::vector<FamilyDatum>>> jobs;
    for (unsigned w = 0; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, [&, w] {
            std::vector<FamilyDatum> part;
            std::array<i64, 6> x{};
            for (std::size_t i = w; i < first.size(); i += workers) {
                x[static_cast<std::size_t>(plan.vars[0])] = first[i];
                walk(term, plan, 1, x, [&](const FamilyDatum& d, const std::array<i64, 6>&) { part.push_back(d); });
            }
            return part;
        }));
    for (auto& j : jobs) {
        auto part = j.get();
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- product families

namespace {

ConstraintTerm term(std::string pattern, std::vector<std::string> cs, i64 v, std::string origin,
                    std::vector<std::string> flags = {}) {
    ConstraintTerm t;
    t.pattern = std::move(pattern);
    t.constraints = std::move(cs);
    t.v = v;
    t.origin = std::move(origin);
    t.flags = std::move(flags);
    return t;
}

void require_substrate(i64 v) {
    if (v == 0) throw InvalidScenario("substrate C(2,0) is not a twist knot; v must be nonzero");
}

}  // namespace

std::vector<ConstraintTerm> tyrosine_product_family(i64 v) {
    require_substrate(v);
    std::vector<ConstraintTerm> out;
    const std::string o = "theorem1";
    out.push_back(term("unknot", {}, v, o));
    out.push_back(term("T(2,r)", {"|r|=2"}, v, o, {"hopf"}));
    // C(1,s) is a torus link and is covered below.
    out.push_back(term("C(r,s)", {"2<=|r|", "|r|<=4", "s!=0"}, v, o));
    out.push_back(term("T(2,r)", {"|r|>=2"}, v, o));
    out.push_back(term("T(2,r)#C(2,s)", {"|r|>=2", "s!=0"}, v, o));
    out.push_back(term("F(p,q,r,s,t,u)", {"|r|>=2", "1<=|t|", "|t|<=2", "|p|<=1"}, v, o));
    // Complement form C1 splits the v-row: u + s = v.
    out.push_back(term("F(0,q,2,s,t,u)", {"|t|=2", "u+s=v"}, v, "C1", {"S1"}));
    out.push_back(term("F(p,q,2,s,t,u)", {"|p|=1", "|t|=1", "u+s=v"}, v, "C1", {"S2"}));
    out.push_back(term("F(p,q,2,s,t,u)", {"|p|=1", "|t|=2", "u+s=v"}, v, "C1", {"S3"}));
    // The single v-determined product outside F.  The parity bookkeeping of the
    // source conflicts with "k odd => knot"; the datum's own component count is reported.
    FamilyDatum g = v < 0 ? FamilyDatum::g1(-v) : FamilyDatum::g2(v - 1);
    std::string kind = components_of(g) == 1 ? "knot" : "link";
    out.push_back(term(twistrec::to_string(g), {}, v, "theorem1-G", {"suspect", kind}));
    return out;
}

std::vector<ConstraintTerm> serine_product_family(i64 v, int rounds, RowCount row) {
    require_substrate(v);
    if (rounds < 1) throw InvalidScenario("rounds must be at least 1");
    std::vector<ConstraintTerm> out;
    const std::string o = "theorem2";
    out.push_back(term("C(r,s)", {"|r|>=2", "s!=0"}, v, o));
    out.push_back(term("T(2,r)", {"r!=0"}, v, o));
    out.push_back(term("T(2,r)#C(2,s)", {"|r|>=2", "s!=0"}, v, o));
    out.push_back(term("F(p,q,r,s,t,u)", {"|r|>=2", "t!=0", "|p|<=1"}, v, o));
    out.push_back(term("F(p,q,r,s,t,u)", {"|p|=1", "|r|>=2", "|t|>=2", "u+s=v"}, v, "C1", {"S3"}));
    // Processive ladder: after n rounds the synapse carries a row of n (or n -+ 1)
    // crossings of one sign, giving C(2,v) + O, then C(2,v) # T(2,m) with growing |m|.
    for (int n = 1; n <= rounds; ++n) {
        int m = n - 1 + static_cast<int>(row);
        if (m < 0) continue;
        ConstraintTerm t = m == 0 ? term("C(2,v)+O", {}, v, "ladder", {"figure-derived"})
                                  : term("C(2,v)#T(2,r)", {"|r|=" + std::to_string(m)}, v, "ladder", {"figure-derived"});
        t.round = n;
        out.push_back(t);
    }
    return out;
}

std::vector<ConstraintTerm> product_family(const Scenario& sc) {
    return sc.recombinase == Recombinase::Tyrosine ? tyrosine_product_family(sc.v)
                                                   : serine_product_family(sc.v, sc.rounds);
}

// ---------------------------------------------------------------- membership

ProductTarget ProductTarget::from_datum(const FamilyDatum& d) {
    ProductTarget t;
    t.label = twistrec::to_string(d);
    t.form = closure_form(d);
    PlanarDiagram D = build_closure_diagram(*t.form);
    t.bracket = kauffman_bracket(D).unit_normalized();
    t.components = component_count(D);
    t.crossing_bound = t.form->crossings();
    return t;
}

ProductTarget ProductTarget::from_diagram(const PlanarDiagram& d, const std::string& label) {
    ProductTarget t;
    t.label = label;
    t.bracket = kauffman_bracket(d).unit_normalized();
    t.components = component_count(d);
    t.crossing_bound = d.size();
    return t;
}

Membership membership(const ProductTarget& target, const Scenario& sc, i64 cap) {
    Membership res;
    res.cap = cap > 0 ? cap : std::max<i64>(target.crossing_bound, 3);
    const std::string want = target.form ? closure_key(*target.form) : "";
    std::map<std::string, bool> seen;  // closure key -> matches
    for (const auto& t : product_family(sc)) {
        bool found = false;
        for_each_instance(t, res.cap, [&](const FamilyDatum& d, const std::array<i64, 6>&) {
            if (found) return;
            ClosureForm cf = closure_form(d);
            if (cf.crossings() > target.crossing_bound) return;
            std::string key = closure_key(cf);
            bool match;
            if (target.form) {
                match = key == want;
            } else {
                auto it = seen.find(key);
                if (it == seen.end()) {
                    PlanarDiagram D = build_closure_diagram(cf);
                    bool m = component_count(D) == target.components &&
                             kauffman_bracket(D).unit_normalized() == target.bracket;
                    it = seen.emplace(key, m).first;
                }
                match = it->second;
            }
            if (match) {
                found = true;
                res.member = true;
                res.term = t.to_string();
                res.witness = d;
            }
        });
        if (found) break;
    }
    return res;
}

bool requires_distributive(const ProductTarget& target, i64 v, i64 cap) {
    Scenario ty{v, Recombinase::Tyrosine, 1};
    Scenario se{v, Recombinase::Serine, 1};
    return !membership(target, ty, cap).member && !membership(target, se, cap).member;
}

// ---------------------------------------------------------------- MCN + 1 products

const std::vector<Theorem5Case>& theorem5_cases() {
    static const std::vector<Theorem5Case> cases = {
        {+1, "C(2,n)", "n = 1 + v or -v", false},
        {-1, "C(2,n)", "n = 2 + |v| or -(|v| + 1)", false},
        {+1, "C(-2,n)", "n = v or -(1 + v)", false},
        {-1, "C(-2,n)", "n = 1 + |v| or -(|v| + 2)", false},
        {0, "C(k,v)", "k = 3", false},
        {+1, "C(k,v)", "k = -2", false},
        {-1, "C(k,v)", "k = -4", false},
        {+1, "T(2,n)", "n = +-(2 + v)", false},
        {-1, "T(2,n)", "n = +-(3 + |v|)", false},
        {+1, "F_S1(0,q,2,s,2,u)", "u + s = v", false},
        {+1, "F_S2(+-1,q,2,s,+-1,u)", "u + s = v, s != 0, q = +-1", false},
        {-1, "F_S2(+-1,q,2,s,+-1,u)", "u + s = v, q = +-1", false},
        {+1, "F_S3(+-1,q,2,s,2,u)", "u + s = v, s, u != 0, q = 0", false},
        {-1, "F_S1(0,q,2,s,-2,u)", "u + s = v", true},
        {-1, "F_S3(+-1,q,2,s,-2,u)", "u + s = v, s, u != 0, q = 0", true},
    };
    return cases;
}

int substrate_mcn(i64 v) { return mcn_clasp(2, v); }

namespace {

std::string num(i64 x) { return std::to_string(x); }

std::string pm(i64 x) { return "+-" + std::to_string(x); }

}  // namespace

std::vector<Theorem5Product> theorem5_products(i64 v) {
    if (v == 0) throw InvalidScenario("v = 0 does not give a twist knot");
    if (v == 1) throw InvalidScenario("v = 1: C(2,1) is the unknot (MCN 2 is impossible), a case the theorem excludes");
    std::vector<Theorem5Product> out;
    auto add = [&](FamilyDatum d, const std::string& family, const std::string& pattern) {
        out.push_back({std::move(d), family, pattern});
    };
    auto clasp = [&](i64 r, i64 s, const std::string& family) {
        add(FamilyDatum::clasp(r, s), family, "C(" + num(r) + "," + num(s) + ")");
    };
    auto torus = [&](i64 m, const std::string& family) {
        add(FamilyDatum::torus(m), family, "T(2," + pm(m) + ")");
        add(FamilyDatum::torus(-m), family, "T(2," + pm(m) + ")");
    };
    if (v == -1) {
        // Substrate is the trefoil; only MCN-4 knots and links qualify.
        clasp(2, -2, "C(2,n)");
        torus(4, "T(2,n)");
        return out;
    }
    const i64 a = v < 0 ? -v : v;
    const int sg = v > 0 ? 1 : -1;
    for (const auto& c : theorem5_cases()) {
        if (c.sign != 0 && c.sign != sg) continue;
        const std::string& f = c.family;
        if (f == "C(2,n)") {
            if (v > 0) { clasp(2, v + 1, f); clasp(2, -v, f); }
            else { clasp(2, 2 + a, f); clasp(2, -(1 + a), f); }
        } else if (f == "C(-2,n)") {
            if (v > 0) { clasp(-2, v, f); clasp(-2, -(1 + v), f); }
            else { clasp(-2, 1 + a, f); clasp(-2, -(2 + a), f); }
        } else if (f == "C(k,v)") {
            i64 k = c.condition == "k = 3" ? 3 : v > 0 ? -2 : -4;
            clasp(k, v, f);
        } else if (f == "T(2,n)") {
            torus(v > 0 ? 2 + v : 3 + a, f);
        } else {
            // C1 split of the v-row into two nonempty rows of the sign of v.
            const bool s1 = f.rfind("F_S1", 0) == 0, s2 = f.rfind("F_S2", 0) == 0;
            const i64 t = f.find(",-2,u)") != std::string::npos ? -2 : 2;
            for (i64 k = 1; k < a; ++k) {
                i64 s = sg * k, u = sg * (a - k);
                if (s1) {
                    // p = 0 makes the q-row an integer tangle with no effect; q is free.
                    add(FamilyDatum::montf(0, 0, 2, s, t, u), f,
                        "F_S1(0,q,2," + num(s) + "," + num(t) + "," + num(u) + ")");
                } else if (s2) {
                    for (i64 q : {1, -1})
                        for (i64 p : {1, -1})
                            for (i64 tt : {1, -1})
                                add(FamilyDatum::montf(p, q, 2, s, tt, u), f,
                                    "F_S2(+-1," + num(q) + ",2," + num(s) + ",+-1," + num(u) + ")");
                } else {
                    for (i64 p : {1, -1})
                        add(FamilyDatum::montf(p, 0, 2, s, t, u), f,
                            "F_S3(+-1,0,2," + num(s) + "," + num(t) + "," + num(u) + ")");
                }
            }
        }
    }
    return out;
}

std::vector<IdentifiedProduct> theorem5_identified(i64 v, bool starred_only) {
    const int target = substrate_mcn(v) + 1;
    std::map<std::pair<std::string, int>, IdentifiedProduct> groups;
    for (const auto& p : theorem5_products(v)) {
        ClosureForm cf = closure_form(p.datum);
        int m = cf.crossings();
        if (starred_only && m != target) continue;
        KnotIdentity id = identify_datum(p.datum);
        std::string name = canonical_name(id.name);
        auto [it, fresh] = groups.try_emplace({name, id.components});
        IdentifiedProduct& g = it->second;
        if (fresh) {
            g.name = name;
            g.components = id.components;
            g.mcn = m;
            g.key = unoriented_closure_key(cf);
            g.witness = p.datum;
        }
        if (std::find(g.patterns.begin(), g.patterns.end(), p.pattern) == g.patterns.end()) g.patterns.push_back(p.pattern);
    }
    std::vector<IdentifiedProduct> out;
    for (auto& [k, g] : groups) out.push_back(std::move(g));
    return out;
}

}  // namespace twistrec
