#include <doctest.h>

#include "oracles.hpp"
#include "twistrec/identify.hpp"
#include "twistrec/mcn.hpp"

using namespace twistrec;

namespace {

std::string name_of(const std::string& datum) { return canonical_name(identify_datum(parse_datum(datum)).name); }

}  // namespace

TEST_CASE("identify standard names") {
    CHECK(name_of("T(2,7)") == "7_1");
    CHECK(name_of("C(2,6)") == "7_2");
    for (const char* s : {"F(1,-1,2,1,1,4)", "F(-1,-1,2,1,-1,4)", "F(1,-1,2,1,-1,4)"}) CHECK(name_of(s) == "5_1");
    CHECK(name_of("F(1,0,2,2,2,3)") == "3_1#4_1");
    CHECK(name_of("F(1,1,2,3,1,2)") == "7_6");
    CHECK(name_of("F(0,0,2,1,2,4)") == "7_3^2");
}

TEST_CASE("identify chirality and composites") {
    KnotIdentity t = identify_datum(FamilyDatum::clasp(2, -1));
    CHECK(t.name == "3_1");
    CHECK(t.chirality == Chirality::Positive);
    CHECK(identify_datum(FamilyDatum::torus(-3)).chirality == Chirality::Negative);
    CHECK(identify_datum(FamilyDatum::clasp(2, -2)).chirality == Chirality::Amphichiral);
    CHECK(describe(t) == "3_1 (+), 1 component");
    // Same bracket as the prime 9_12; the closure form tells them apart.
    CHECK(name_of("F(1,0,2,3,2,4)") == "4_1#5_2");
    CHECK(identify_datum(FamilyDatum::torus(4)).components == 2);
    CHECK(canonical_name("6_1#3_1") == canonical_name("3_1#6_1"));
}

TEST_CASE("identify by diagram agrees with identify by datum") {
    for (const char* s : {"C(2,5)", "C(3,-4)", "T(2,9)", "F(1,1,2,1,1,6)", "F(0,0,2,2,2,3)", "K(3,3,-2)"}) {
        FamilyDatum d = parse_datum(s);
        KnotIdentity a = identify(build_diagram(d));
        KnotIdentity b = identify_datum(d);
        INFO(s);
        CHECK(a.components == b.components);
        if (a.alternatives.empty()) CHECK(a.name == b.name);
    }
}

TEST_CASE("clasp and torus formulas") {
    CHECK(mcn_clasp(2, 6) == 7);
    CHECK(mcn_clasp(2, -5) == 7);
    CHECK(mcn_clasp(2, -1) == 3);
    CHECK(mcn_clasp(2, 5) == 6);
    CHECK(mcn_torus(7) == 7);
    CHECK(mcn_torus(-4) == 4);
    CHECK(mcn_torus(1) == 0);
    // Oracle side: the trefoil reaches its bracket span bound.
    OracleMcn o = oracle_mcn(FamilyDatum::clasp(2, -1));
    CHECK(o.exact());
    CHECK(o.lo == 3);
    for (i64 r : {-4, -3, -2, 2, 3, 4})
        for (i64 v = -6; v <= 6; ++v) {
            if (v == 0) continue;
            OracleMcn c = oracle_mcn(FamilyDatum::clasp(r, v));
            INFO("C(" << r << "," << v << ")");
            CHECK(c.exact());
            // With v = +-1 of the same sign as r the rows merge into T(2, |r| - 1),
            // which the closed formula overcounts.
            if ((v == 1 || v == -1) && (r > 0) == (v > 0)) {
                CHECK(c.lo == mcn_torus(std::llabs(r) - 1));
                CHECK(mcn_clasp(r, v) > c.lo);
            } else
                CHECK(mcn_clasp(r, v) == c.lo);
        }
}

TEST_CASE("G family") {
    CHECK(mcn_G(FamilyDatum::g1(3)) == 7);
    CHECK(mcn_G(FamilyDatum::g2(0)) == 3);
    CHECK(mcn_G(FamilyDatum::g1(2)) == oracle_mcn(FamilyDatum::g1(2)).hi);
    CHECK(oracle_mcn(FamilyDatum::g1(2)).exact());
}

TEST_CASE("rule engine rows") {
    McnF torus = mcn_F(0, 0, 3, 0, 4, 0);
    CHECK(torus.value == 7);
    REQUIRE(RuleSet::instance().find(torus.rule_id) != nullptr);
    CHECK(RuleSet::instance().find(torus.rule_id)->form == "T(2,t+r)");
    CHECK(mcn(FamilyDatum::montf(0, 0, 3, 0, 4, 0)) == 7);
    for (i64 q : {-2, 0, 3})
        for (i64 s : {-1, 2})
            for (i64 u : {-3, 1}) CHECK(mcn_F(1, q, 0, s, 0, u).value == 0);
    McnF alt = mcn_F(0, 1, 2, 1, 2, 1);
    OracleMcn o = oracle_mcn(FamilyDatum::montf(0, 1, 2, 1, 2, 1));
    CHECK(o.exact());
    CHECK(alt.value == o.lo);
    CHECK(mcn(parse_datum("C(2,-1)#C(2,-2)")) == 7);
    CHECK(mcn(FamilyDatum::unknot()) == 0);
    CHECK(mcn(parse_datum("C(2,5)")) == 6);
}

TEST_CASE("rule file") {
    const RuleSet& rs = RuleSet::instance();
    CHECK(rs.rules().size() >= 100);
    CHECK_THROWS_AS(RuleSet::parse("table,row,predicate,form,moves,mcn_expr,bound_expr\n2,1,p = = 0,x,0,1,1\n"), RuleSyntaxError);
    Expr e = Expr::parse("|t| + (r - 1) + 2?");
    CHECK(e.eval({0, 0, 3, 0, -4, 0}) == 6);
    CHECK(e.tolerance() == 2);
    CHECK(Expr::parse("u + s = v").eval({0, 0, 0, 2, 0, 3}, 5) == 1);
}
