#include "twistrec/mcn.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "twistrec/embedded_data.hpp"

namespace twistrec {

// ---------------------------------------------------------------- expressions

struct Expr::Node {
    enum Op { Num, Var, N, Abs, Sgn, Neg, Not, Add, Sub, Mul, Pow, Lt, Le, Gt, Ge, Eq, Ne, And, Or, Query } op = Num;
    i64 value = 0;  // literal, or variable index
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodeP = std::shared_ptr<const Expr::Node>;

NodeP make(Expr::Node::Op op, NodeP a = nullptr, NodeP b = nullptr, i64 value = 0) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    n->value = value;
    return n;
}

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    NodeP parse_all() {
        NodeP n = parse_or();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + s_.substr(i_) + "'");
        return n;
    }
    int tolerance() const { return tol_; }
    unsigned variables() const { return vars_; }

private:
    [[noreturn]] void fail(const std::string& why) const { throw RuleSyntaxError("expression '" + s_ + "': " + why); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool word(const char* w) {
        skip();
        std::size_t n = std::char_traits<char>::length(w);
        if (s_.compare(i_, n, w) != 0) return false;
        if (i_ + n < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_ + n]))) return false;
        i_ += n;
        return true;
    }
    bool sym(const char* w) {
        skip();
        std::size_t n = std::char_traits<char>::length(w);
        if (s_.compare(i_, n, w) != 0) return false;
        i_ += n;
        return true;
    }

    NodeP parse_or() {
        NodeP l = parse_and();
        while (word("or")) l = make(Expr::Node::Or, l, parse_and());
        return l;
    }
    NodeP parse_and() {
        NodeP l = parse_not();
        while (word("and")) l = make(Expr::Node::And, l, parse_not());
        return l;
    }
    NodeP parse_not() {
        if (word("not")) return make(Expr::Node::Not, parse_not());
        return parse_cmp();
    }
    bool cmp_op(Expr::Node::Op& op) {
        if (sym("<=")) op = Expr::Node::Le;
        else if (sym(">=")) op = Expr::Node::Ge;
        else if (sym("!=")) op = Expr::Node::Ne;
        else if (sym("<")) op = Expr::Node::Lt;
        else if (sym(">")) op = Expr::Node::Gt;
        else if (sym("=")) op = Expr::Node::Eq;
        else return false;
        return true;
    }
    NodeP parse_cmp() {
        NodeP l = parse_sum();
        NodeP result;
        Expr::Node::Op op;
        while (cmp_op(op)) {
            NodeP r = parse_sum();
            NodeP c = make(op, l, r);
            result = result ? make(Expr::Node::And, result, c) : c;
            l = r;
        }
        return result ? result : l;
    }
    NodeP parse_sum() {
        NodeP l = parse_prod();
        for (;;) {
            if (sym("+")) l = make(Expr::Node::Add, l, parse_prod());
            else if (sym("-")) l = make(Expr::Node::Sub, l, parse_prod());
            else return l;
        }
    }
    NodeP parse_prod() {
        NodeP l = parse_pow();
        while (sym("*")) l = make(Expr::Node::Mul, l, parse_pow());
        return l;
    }
    NodeP parse_pow() {
        NodeP l = parse_unary();
        if (sym("^")) return make(Expr::Node::Pow, l, parse_unary());
        return l;
    }
    NodeP parse_unary() {
        if (sym("-")) return make(Expr::Node::Neg, parse_unary());
        return parse_primary();
    }
    NodeP parse_primary() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            NodeP n = parse_or();
            if (!sym(")")) fail("missing ')'");
            return n;
        }
        if (c == '|') {
            ++i_;
            NodeP n = parse_sum();
            if (!sym("|")) fail("missing closing '|'");
            return make(Expr::Node::Abs, n);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            i64 v = 0;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) v = v * 10 + (s_[i_++] - '0');
            if (i_ < s_.size() && s_[i_] == '?') {
                ++i_;
                tol_ += static_cast<int>(v);
                return make(Expr::Node::Query, nullptr, nullptr, v);
            }
            return make(Expr::Node::Num, nullptr, nullptr, v);
        }
        if (word("true")) return make(Expr::Node::Num, nullptr, nullptr, 1);
        if (word("sgn")) {
            if (!sym("(")) fail("sgn needs '('");
            NodeP n = parse_sum();
            if (!sym(")")) fail("missing ')'");
            return make(Expr::Node::Sgn, n);
        }
        static const std::string names = "pqrstu";
        auto pos = names.find(c);
        if (pos != std::string::npos) {
            ++i_;
            vars_ |= 1u << pos;
            return make(Expr::Node::Var, nullptr, nullptr, static_cast<i64>(pos));
        }
        if (c == 'n' || c == 'v') {
            ++i_;
            vars_ |= 1u << 6;
            return make(Expr::Node::N);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int tol_ = 0;
    unsigned vars_ = 0;
};

i64 eval_node(const Expr::Node& n, const std::array<i64, 6>& v, i64 nn) {
    using O = Expr::Node;
    auto A = [&] { return eval_node(*n.a, v, nn); };
    auto B = [&] { return eval_node(*n.b, v, nn); };
    switch (n.op) {
        case O::Num: return n.value;
        case O::Query: return 0;
        case O::Var: return v[static_cast<std::size_t>(n.value)];
        case O::N: return nn;
        case O::Abs: { i64 x = A(); return x < 0 ? -x : x; }
        case O::Sgn: { i64 x = A(); return (x > 0) - (x < 0); }
        case O::Neg: return -A();
        case O::Not: return A() == 0;
        case O::Add: return A() + B();
        case O::Sub: return A() - B();
        case O::Mul: return A() * B();
        case O::Pow: {
            i64 base = A(), e = B(), r = 1;
            for (i64 i = 0; i < e; ++i) r *= base;
            return r;
        }
        case O::Lt: return A() < B();
        case O::Le: return A() <= B();
        case O::Gt: return A() > B();
        case O::Ge: return A() >= B();
        case O::Eq: return A() == B();
        case O::Ne: return A() != B();
        case O::And: return A() && B();
        case O::Or: return A() || B();
    }
    return 0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    ExprParser p(text);
    Expr e;
    e.root_ = p.parse_all();
    e.tolerance_ = p.tolerance();
    e.variables_ = p.variables();
    e.text_ = text;
    return e;
}

i64 Expr::eval(const std::array<i64, 6>& v, i64 n) const {
    if (!root_) throw std::logic_error("empty expression");
    return eval_node(*root_, v, n);
}

// ---------------------------------------------------------------- rule table

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        else if (c == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

FormKind form_kind_of(const std::string& f) {
    if (f == "alternating") return FormKind::Alternating;
    if (f == "montesinos") return FormKind::Montesinos;
    if (f == "hara-yamamoto") return FormKind::HaraYamamoto;
    if (f == "trivial") return FormKind::Trivial;
    if (f == "unknot") return FormKind::Unknot;
    if (f == "unlink") return FormKind::Unlink;
    if (f == "closure") return FormKind::Closure;
    return FormKind::Datum;
}

// Splits "T(2,u)#C(r,s)+O" into summand templates; returns false on a malformed form.
struct FormPart {
    char family = 0;  // 'T', 'C', 'K'
    std::vector<Expr> args;
};

bool parse_form(const std::string& f, std::vector<FormPart>& parts, bool& plus_o) {
    std::string s = f;
    plus_o = false;
    if (s.size() > 2 && s.compare(s.size() - 2, 2, "+O") == 0) {
        plus_o = true;
        s.resize(s.size() - 2);
    }
    std::size_t i = 0;
    while (i < s.size()) {
        FormPart part;
        part.family = s[i];
        if (i + 1 >= s.size() || s[i + 1] != '(') return false;
        std::size_t j = i + 2;
        int depth = 0;
        std::string arg;
        for (; j < s.size(); ++j) {
            char c = s[j];
            if ((c == ',' || c == ')') && depth == 0) {
                part.args.push_back(Expr::parse(arg));
                arg.clear();
                if (c == ')') break;
                continue;
            }
            if (c == '(') ++depth;
            if (c == ')') --depth;
            arg += c;
        }
        if (j >= s.size()) return false;
        parts.push_back(std::move(part));
        i = j + 1;
        if (i < s.size()) {
            if (s[i] != '#') return false;
            ++i;
        }
    }
    return !parts.empty();
}

}  // namespace

std::optional<FamilyDatum> McnRule::form_datum(const std::array<i64, 6>& v) const {
    if (form_kind != FormKind::Datum) return std::nullopt;
    std::vector<FormPart> parts;
    bool plus_o = false;
    if (!parse_form(form, parts, plus_o)) return std::nullopt;
    std::vector<FamilyDatum> ds;
    for (const auto& p : parts) {
        std::vector<i64> a;
        for (const auto& e : p.args) a.push_back(e.eval(v));
        if (p.family == 'T' && a.size() == 2 && a[0] == 2) ds.push_back(FamilyDatum::torus(a[1]));
        else if (p.family == 'C' && a.size() == 2) ds.push_back(FamilyDatum::clasp(a[0], a[1]));
        else if (p.family == 'K' && a.size() == 3) ds.push_back(FamilyDatum::pretzel(a[0], a[1], a[2]));
        else return std::nullopt;
    }
    FamilyDatum d = ds.size() == 1 ? ds[0] : FamilyDatum::sum(ds);
    if (plus_o) d = FamilyDatum::plus_o(d);
    return d;
}

RuleSet RuleSet::parse(const std::string& csv) {
    RuleSet rs;
    std::istringstream in(csv);
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            if (line.rfind("table,", 0) == 0) continue;
        }
        auto f = split_csv_line(line);
        if (f.size() != 9) throw RuleSyntaxError("rules line " + std::to_string(lineno) + ": expected 9 fields");
        McnRule r;
        try {
            r.table = std::stoi(f[0]);
            r.row = trim(f[1]);
            r.predicate = Expr::parse(f[2]);
            r.form = trim(f[3]);
            r.form_kind = form_kind_of(r.form);
            r.moves = trim(f[4]);
            r.mcn_expr = Expr::parse(f[5]);
            r.bound_expr = Expr::parse(f[6]);
            std::istringstream flags(f[7]);
            std::string flag;
            while (flags >> flag) {
                if (flag == "inexact") r.inexact = true;
                else if (flag == "suspect") r.suspect = true;
                else if (flag == "corrected") r.corrected = true;
                else if (flag == "fallback") r.fallback = true;
                else throw RuleSyntaxError("unknown flag '" + flag + "'");
            }
            r.note = trim(f[8]);
            if (r.form_kind == FormKind::Datum) {
                std::vector<FormPart> parts;
                bool plus_o;
                if (!parse_form(r.form, parts, plus_o)) throw RuleSyntaxError("bad form '" + r.form + "'");
            }
        } catch (const RuleSyntaxError& e) {
            throw RuleSyntaxError("rules line " + std::to_string(lineno) + ": " + e.what());
        } catch (const std::logic_error& e) {
            throw RuleSyntaxError("rules line " + std::to_string(lineno) + ": " + e.what());
        }
        if (r.inexact != (r.mcn_expr.tolerance() > 0))
            throw RuleSyntaxError("rules line " + std::to_string(lineno) + ": inexact flag disagrees with '?' terms");
        rs.rules_.push_back(std::move(r));
    }
    if (rs.rules_.empty() || !rs.rules_.back().fallback)
        throw RuleSyntaxError("rule table must end with the fallback row");
    return rs;
}

const RuleSet& RuleSet::instance() {
    static const RuleSet rs = parse(embedded_mcn_rules_csv());
    return rs;
}

const McnRule& RuleSet::match(const std::array<i64, 6>& v) const {
    for (const auto& r : rules_)
        if (r.predicate.eval(v)) return r;
    throw NoRuleMatched("no MCN rule for F(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
                        std::to_string(v[2]) + "," + std::to_string(v[3]) + "," + std::to_string(v[4]) + "," +
                        std::to_string(v[5]) + ")");
}

const McnRule* RuleSet::find(const std::string& id) const {
    for (const auto& r : rules_)
        if (r.id() == id) return &r;
    return nullptr;
}

// ---------------------------------------------------------------- oracle

int calculus_mcn(const FamilyDatum& d) { return closure_form(d).crossings(); }

OracleMcn oracle_mcn(const FamilyDatum& d, int limit) {
    PlanarDiagram tmpl = build_diagram(d, limit);
    LaurentPoly bt = kauffman_bracket(tmpl, limit);
    ClosureForm cf = closure_form(d);
    PlanarDiagram canon = build_closure_diagram(cf);
    LaurentPoly bc = kauffman_bracket(canon, std::max(limit, canon.size()));
    if (bt.unit_normalized() != bc.unit_normalized())
        throw std::logic_error("oracle: reduced diagram of " + to_string(d) + " disagrees with its template");
    OracleMcn o;
    o.hi = canon.size();
    int splits = static_cast<int>(cf.pieces.size()) + cf.free_loops;
    int lo = (bt.span() - 4 * std::max(0, splits - 1)) / 4;
    o.lo = std::clamp(lo, 0, o.hi);
    if (o.lo == o.hi) {
        o.reason = "span";
    } else if (is_adequate(canon)) {
        o.lo = o.hi;
        o.reason = "adequate";
    } else if (cf.pieces.size() == 1 && cf.pieces[0].size() == 1 && !cf.pieces[0][0].rational) {
        o.lo = o.hi;
        o.reason = "montesinos";
    } else {
        o.reason = "interval";
    }
    return o;
}

// ---------------------------------------------------------------- formulas

int mcn_clasp(i64 r, i64 s) {
    if (r == 0 || r == 1 || r == -1 || s == 0) throw MalformedDatum("clasp needs |r| >= 2 and v != 0");
    i64 ar = r < 0 ? -r : r, as = s < 0 ? -s : s;
    return static_cast<int>((r > 0) == (s > 0) ? ar + as - 1 : ar + as);
}

int mcn_torus(i64 m) {
    i64 a = m < 0 ? -m : m;
    return a <= 1 ? 0 : static_cast<int>(a);
}

int mcn_G(const FamilyDatum& d) {
    i64 k = d.params.at(0);
    if (d.kind == Kind::G1) return static_cast<int>(4 + (k < 0 ? -k : k));
    if (d.kind == Kind::G2) {
        if (k < 0) throw MalformedDatum("G2 MCN formula needs k >= 0");
        return static_cast<int>(3 + k);
    }
    throw MalformedDatum("mcn_G: not a G-family datum");
}

namespace {

constexpr std::array<std::array<int, 3>, 6> kPairOrders = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

std::array<i64, 6> arrange(const std::array<i64, 6>& v, const std::array<int, 3>& ord) {
    std::array<i64, 6> w{};
    for (int i = 0; i < 3; ++i) {
        w[2 * i] = v[2 * ord[i]];
        w[2 * i + 1] = v[2 * ord[i] + 1];
    }
    if (w[2] < 0)
        for (auto& x : w) x = -x;
    return w;
}

}  // namespace

McnF mcn_F(i64 p, i64 q, i64 r, i64 s, i64 t, i64 u) {
    const RuleSet& rs = RuleSet::instance();
    const std::array<i64, 6> given{p, q, r, s, t, u};
    // Permuting the three row pairs permutes the Montesinos tangles, which keeps the link type.
    const McnRule* rule = nullptr;
    std::array<i64, 6> w{};
    for (const auto& ord : kPairOrders) {
        std::array<i64, 6> cand = arrange(given, ord);
        const McnRule& m = rs.match(cand);
        if (!rule || (rule->fallback && !m.fallback)) {
            rule = &m;
            w = cand;
        }
        if (!rule->fallback) break;
    }
    McnF out;
    out.rule_id = rule->id();
    out.matched = w;
    out.suspect = rule->suspect;
    out.corrected = rule->corrected;
    out.fallback = rule->fallback;
    out.tolerance = rule->mcn_expr.tolerance();
    out.exact = !rule->inexact;
    FamilyDatum self = FamilyDatum::montf(p, q, r, s, t, u);
    if (rule->fallback) {
        out.rule_value = out.value = out.lo = out.hi = calculus_mcn(self);
        out.resolution = "calculus";
        return out;
    }
    out.rule_value = static_cast<int>(rule->mcn_expr.eval(w));
    out.value = out.lo = out.hi = out.rule_value;
    out.resolution = "rule";
    // A form naming another family takes that family's formula.
    if (auto fd = rule->form_datum(w)) {
        try {
            validate(*fd);
            out.value = out.lo = out.hi = mcn(*fd);
            out.resolution = "delegate";
            return out;
        } catch (const MalformedDatum&) {
            // degenerate instance of the named form
        }
    }
    if (out.exact) return out;

    try {
        OracleMcn o = oracle_mcn(self);
        out.lo = o.lo;
        out.hi = o.hi;
        out.value = o.hi;
        out.resolution = o.exact() ? "oracle" : "interval";
    } catch (const TooLarge&) {
        out.lo = std::max(0, out.rule_value - out.tolerance);
        out.hi = out.rule_value + out.tolerance;
        out.resolution = "interval";
    }
    return out;
}

int mcn(const FamilyDatum& d0) {
    FamilyDatum d = normalize(d0);
    switch (d.kind) {
        case Kind::Unknot:
        case Kind::Unlink: return 0;
        case Kind::Torus: return mcn_torus(d.params[0]);
        case Kind::Clasp: return mcn_clasp(d.params[0], d.params[1]);
        case Kind::Pretzel: return calculus_mcn(d);
        case Kind::MontF: {
            const auto& x = d.params;
            return mcn_F(x[0], x[1], x[2], x[3], x[4], x[5]).value;
        }
        case Kind::G1: return mcn_G(d);
        case Kind::G2: return d.params[0] < 0 ? mcn_G(mirror(d)) : mcn_G(d);
        case Kind::ConnectedSum: {
            int total = 0;
            for (const auto& part : d.parts) total += mcn(part);
            return total;
        }
        case Kind::WithTrivialComponent: return mcn(d.inner());
    }
    return 0;
}

}  // namespace twistrec
