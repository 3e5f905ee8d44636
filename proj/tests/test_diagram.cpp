#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twistrec/datum.hpp"
#include "twistrec/diagram.hpp"
#include "twistrec/moves.hpp"

using namespace twistrec;

#ifndef TWISTREC_TEST_DIR
#define TWISTREC_TEST_DIR "."
#endif

namespace {

PlanarDiagram pd_file(const std::string& name) {
    return parse_pd(oracle::read_file(std::string(TWISTREC_TEST_DIR) + "/data/" + name + ".pd"));
}

}  // namespace

TEST_CASE("datum text round trip") {
    for (const char* s : {"unknot", "unlink(3)", "T(2,-5)", "C(2,7)", "K(1,-3,3)", "F(1,0,2,1,2,1)", "G1(3)", "G2(0)",
                          "T(2,3)#C(2,-4)", "C(2,5)+O"}) {
        FamilyDatum d = parse_datum(s);
        CHECK(to_string(d) == s);
        CHECK(parse_datum(to_string(d)) == d);
    }
    CHECK_THROWS_AS(parse_datum("C(1,3)"), MalformedDatum);
    CHECK_THROWS_AS(parse_datum("C(2,0)"), MalformedDatum);
    CHECK_THROWS_AS(parse_datum("F(1,2)"), MalformedDatum);
    CHECK_THROWS_AS(parse_datum("Q(3)"), MalformedDatum);
}

TEST_CASE("normalize and mirror") {
    CHECK(normalize(FamilyDatum::clasp(-2, 3)) == FamilyDatum::clasp(2, 4));
    CHECK(normalize(FamilyDatum::torus(1)) == FamilyDatum::unknot());
    CHECK(mirror(FamilyDatum::torus(7)) == FamilyDatum::torus(-7));
    CHECK(mirror(FamilyDatum::montf(1, 0, 2, 1, 2, 1)) == FamilyDatum::montf(-1, 0, -2, -1, -2, -1));
    CHECK(oracle::jones(build_diagram(normalize(FamilyDatum::clasp(2, -1)))) ==
          oracle::jones(build_diagram(normalize(FamilyDatum::torus(3)))));
    // The clasp move keeps the knot type.
    for (i64 v : {-4, -2, 2, 5})
        CHECK(oracle::jones(build_diagram(FamilyDatum::clasp(-2, v))) == oracle::jones(build_diagram(FamilyDatum::clasp(2, v + 1))));
}

TEST_CASE("component counts") {
    CHECK(components_of(FamilyDatum::g1(2)) == 2);
    CHECK(components_of(FamilyDatum::torus(4)) == 2);
    CHECK(components_of(FamilyDatum::g2(3)) == 1);
    for (const char* s : {"F(0,0,2,1,2,2)", "F(1,1,2,2,1,3)", "G1(2)", "G2(3)", "T(2,4)", "C(3,5)", "K(2,2,2)"}) {
        FamilyDatum d = parse_datum(s);
        CHECK(component_count(build_diagram(d)) == components_of(d));
    }
    CHECK(build_diagram(FamilyDatum::g1(2)).size() == 6);
    CHECK(build_diagram(FamilyDatum::torus(3)).size() == 3);
}

TEST_CASE("bracket: fast evaluation agrees with the state sum") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> x(-2, 2);
    for (int i = 0; i < 120; ++i) {
        FamilyDatum d = FamilyDatum::montf(x(rng), x(rng), x(rng), x(rng), x(rng), x(rng));
        if (template_crossings(d) > 13) continue;
        PlanarDiagram pd = build_diagram(d);
        INFO(to_string(d));
        CHECK(kauffman_bracket(pd) == oracle::bracket(pd));
        CHECK(kauffman_bracket_bruteforce(pd) == oracle::bracket(pd));
    }
    for (const char* f : {"3_1", "4_1", "8_11", "8_18", "10_141"}) CHECK(kauffman_bracket(pd_file(f)) == oracle::bracket(pd_file(f)));
}

TEST_CASE("bracket base cases") {
    PlanarDiagram unknot;
    unknot.free_loops = 1;
    CHECK(kauffman_bracket(unknot) == LaurentPoly::monomial(0));
    PlanarDiagram two;
    two.free_loops = 2;
    CHECK(kauffman_bracket(two) == LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1));
    CHECK(jones(unknot) == LaurentPoly::monomial(0));
}

TEST_CASE("jones of small knots") {
    // Right-handed trefoil: t + t^3 - t^4.
    LaurentPoly right = oracle::in_t({{1, 1}, {3, 1}, {4, -1}});
    CHECK(jones(build_diagram(FamilyDatum::clasp(2, -1))) == right);
    CHECK(jones(build_diagram(mirror(FamilyDatum::clasp(2, -1)))) == right.inverted());
    CHECK(jones(build_diagram(FamilyDatum::clasp(2, -1))).span() == 6);  // span 3 in t
    LaurentPoly fig8 = jones(build_diagram(FamilyDatum::clasp(2, -2)));
    CHECK(fig8 == fig8.inverted());
    CHECK(fig8 == oracle::in_t({{-2, 1}, {-1, -1}, {0, 1}, {1, -1}, {2, 1}}));
    CHECK(jones(pd_file("4_1")) == fig8);
    CHECK(jones(pd_file("3_1")) == oracle::jones(pd_file("3_1")));
}

TEST_CASE("PD parsing and orientation") {
    PlanarDiagram d = pd_file("8_18");
    CHECK(d.size() == 8);
    CHECK(signs_consistent(d));
    CHECK(to_pd_text(parse_pd(to_pd_text(d))) == to_pd_text(d));
    PlanarDiagram o = oriented(d);
    CHECK(jones(o) == jones(d));
    CHECK_THROWS(parse_pd("X(1,2,3,4,+)"));
}

TEST_CASE("Reidemeister moves preserve the Jones polynomial") {
    std::mt19937_64 rng(5);
    for (const char* f : {"3_1", "4_1", "8_11"}) {
        PlanarDiagram d = pd_file(f);
        const LaurentPoly j = jones(d);
        std::map<Move, int> seen;
        for (int i = 0; i < 80; ++i) {
            auto m = random_move(d, rng, 12);
            if (!m) continue;
            ++seen[*m];
            validate(d);
            REQUIRE(signs_consistent(d));
            REQUIRE(oracle::jones(d) == j);
        }
        CHECK(seen.size() >= 3);
    }
}

TEST_CASE("single moves") {
    PlanarDiagram d = build_diagram(FamilyDatum::clasp(2, -1));
    PlanarDiagram k = r1_add(d, {0, 0}, 2);
    CHECK(k.size() == 4);
    CHECK(jones(k) == jones(d));
    bool removed = false;
    for (int c = 0; c < k.size(); ++c)
        if (auto r = r1_remove(k, c)) {
            CHECK(r->size() == 3);
            CHECK(jones(*r) == jones(d));
            removed = true;
        }
    CHECK(removed);
    // Every face of a connected diagram with n crossings: n + 2 faces.
    CHECK(faces(d).size() == 5);
    int r3_count = 0;
    for (const auto& f : faces(pd_file("3_1")))
        for (int w = 0; w < 3; ++w)
            if (auto r = r3(pd_file("3_1"), f, w)) ++r3_count;
    CHECK(r3_count == 0);  // alternating: no triangle has a strand over both its ends
}
