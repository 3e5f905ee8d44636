#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistrec/datum.hpp"
#include "twistrec/diagram.hpp"

namespace twistrec {

struct NoRuleMatched : std::logic_error {
    using std::logic_error::logic_error;
};

struct RuleSyntaxError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integer expression over the parameters p,q,r,s,t,u plus one extra argument,
// spelled n in bound columns and v (the substrate row) in product constraints.
// Grammar: literals, names, |e|, sgn(e), + - *, comparisons (chainable),
// not/and/or, and "k?" terms that evaluate to 0 and add k to the tolerance.
class Expr {
public:
    static Expr parse(const std::string& text);
    Expr() = default;

    i64 eval(const std::array<i64, 6>& v, i64 n = 0) const;
    int tolerance() const { return tolerance_; }
    const std::string& text() const { return text_; }
    bool empty() const { return !root_; }
    // Bit i set when parameter i (p..u) occurs; bit 6 for the extra argument.
    unsigned variables() const { return variables_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    int tolerance_ = 0;
    unsigned variables_ = 0;
    std::string text_;
};

enum class FormKind { Alternating, Montesinos, HaraYamamoto, Trivial, Unknot, Unlink, Datum, Closure };

struct McnRule {
    int table = 0;
    std::string row;  // printed row index, e.g. "13"
    Expr predicate;
    std::string form;  // as written: "alternating", "T(2,t+r)", "C(r,s)+O", ...
    FormKind form_kind = FormKind::Closure;
    std::string moves;
    Expr mcn_expr;
    Expr bound_expr;
    bool inexact = false;
    bool suspect = false;
    bool corrected = false;
    bool fallback = false;
    std::string note;

    std::string id() const { return "T" + std::to_string(table) + "." + row; }
    // Datum named by the form column, instantiated at v (Datum forms only).
    std::optional<FamilyDatum> form_datum(const std::array<i64, 6>& v) const;
};

class RuleSet {
public:
    static const RuleSet& instance();  // the shipped tables
    static RuleSet parse(const std::string& csv);

    const std::vector<McnRule>& rules() const { return rules_; }
    // First rule whose predicate holds at v (already mirror-normalized).  Throws NoRuleMatched.
    const McnRule& match(const std::array<i64, 6>& v) const;
    const McnRule* find(const std::string& id) const;

private:
    std::vector<McnRule> rules_;
};

// Crossing-number certificate from the diagram oracle.
struct OracleMcn {
    int lo = 0;
    int hi = 0;
    bool exact() const { return lo == hi; }
    std::string reason;  // "span", "adequate", "montesinos", "interval"
};

// Lower bound from the bracket span of the template diagram, upper bound from the
// canonical diagram of the tangle-calculus reduction (checked bracket-equal to the template).
OracleMcn oracle_mcn(const FamilyDatum& d, int limit);
inline OracleMcn oracle_mcn(const FamilyDatum& d) { return oracle_mcn(d, oracle_limit()); }

// MCN of the tangle-calculus reduction: minimal by the adequacy and Montesinos
// minimality theorems for every closure the reduction produces.
int calculus_mcn(const FamilyDatum& d);

struct McnF {
    int rule_value = 0;       // value of the matched row's expression
    int tolerance = 0;        // width of the row's "?" terms
    bool exact = true;        // false for inexact rows
    std::string rule_id;      // "T2.13"
    bool suspect = false;
    bool corrected = false;
    bool fallback = false;
    std::array<i64, 6> matched{};  // parameters the row was matched on (permuted, mirrored)
    // Resolution of inexact rows: delegated family formula or oracle.
    int value = 0;
    int lo = 0, hi = 0;       // interval when unresolved
    std::string resolution;   // "rule", "delegate", "oracle", "interval"
};

int mcn_clasp(i64 r, i64 s);
int mcn_torus(i64 m);
int mcn_G(const FamilyDatum& d);
McnF mcn_F(i64 p, i64 q, i64 r, i64 s, i64 t, i64 u);
int mcn(const FamilyDatum& d);

}  // namespace twistrec
