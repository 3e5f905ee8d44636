#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistrec/datum.hpp"
#include "twistrec/laurent.hpp"
#include "twistrec/tangle.hpp"

namespace twistrec {

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One crossing of a PD code.  Edge labels are listed counterclockwise starting
// from the incoming under-edge; the crossing is positive when the over strand
// runs from slot 3 to slot 1.
struct Crossing {
    std::array<int, 4> e{};
    int sign = 1;
};

struct PlanarDiagram {
    std::vector<Crossing> crossings;
    int free_loops = 0;  // crossingless circles

    int size() const { return static_cast<int>(crossings.size()); }
};

constexpr int kDefaultOracleLimit = 18;
// TWISTREC_ORACLE_LIMIT overrides the default crossing cap.
int oracle_limit();

// Checks that every label occurs exactly twice.  Throws std::invalid_argument.
void validate(const PlanarDiagram& d);

// Chooses an orientation of each component, rotates crossings so slot 0 is the
// incoming under-edge and recomputes signs.  Labels are renumbered 1..2n along
// the traversal when relabel is true.
PlanarDiagram oriented(const PlanarDiagram& d, bool relabel = true);
// Same, but a component containing one of the (crossing, slot) entries is
// oriented to enter there.
PlanarDiagram oriented_along(const PlanarDiagram& d, const std::vector<std::pair<int, int>>& entries, bool relabel = true);
// True if the stored signs agree with some orientation of the components.
bool signs_consistent(const PlanarDiagram& d);

PlanarDiagram parse_pd(const std::string& text);
std::string to_pd_text(const PlanarDiagram& d);

int writhe(const PlanarDiagram& d);
int component_count(const PlanarDiagram& d);
bool is_alternating(const PlanarDiagram& d);
// Number of connected pieces of the underlying plane graph, free loops included.
int diagram_pieces(const PlanarDiagram& d);

PlanarDiagram mirror_diagram(const PlanarDiagram& d);
PlanarDiagram disjoint_union(const PlanarDiagram& a, const PlanarDiagram& b);
PlanarDiagram connected_sum(const PlanarDiagram& a, const PlanarDiagram& b);

LaurentPoly kauffman_bracket(const PlanarDiagram& d, int limit);
inline LaurentPoly kauffman_bracket(const PlanarDiagram& d) { return kauffman_bracket(d, oracle_limit()); }
// Plain 2^n state enumeration; slow, kept as a cross-check.
LaurentPoly kauffman_bracket_bruteforce(const PlanarDiagram& d);

// Jones polynomial in x = t^(1/2): (-A^3)^(-w) <D> with A^e rewritten as x^(-e/2).
LaurentPoly jones(const PlanarDiagram& d, int limit);
inline LaurentPoly jones(const PlanarDiagram& d) { return jones(d, oracle_limit()); }
std::string jones_to_string(const LaurentPoly& v);

// Both smoothings of every crossing in the all-A (resp. all-B) state join distinct circles.
bool is_adequate(const PlanarDiagram& d);

// Four-ended tangle diagram under construction, with endpoints NW, NE, SW, SE.
class TangleDiagram {
public:
    static TangleDiagram zero();
    static TangleDiagram infinity();
    static TangleDiagram from_fraction(const Fraction& f);  // alternating standard diagram

    // s = +1 or -1; horizontal twist adds +-1 to the fraction, vertical twist adds +-1 to its reciprocal.
    void htwist(int s);
    void vtwist(int s);
    void htwists(i64 n);
    void vtwists(i64 n);

    // Horizontal sum: this.NE-o.NW and this.SE-o.SW are joined.
    TangleDiagram plus(const TangleDiagram& o) const;
    PlanarDiagram numerator() const;    // NW-NE, SW-SE
    PlanarDiagram denominator() const;  // NW-SW, NE-SE
    int size() const { return static_cast<int>(cr_.size()); }

private:
    int fresh() { return next_++; }
    PlanarDiagram close(bool numerator) const;

    std::vector<std::array<int, 4>> cr_;
    std::vector<std::pair<int, int>> glue_;
    int next_ = 0;
    int nw_ = 0, ne_ = 0, sw_ = 0, se_ = 0;
};

PlanarDiagram build_diagram(const FamilyDatum& d, int limit);
inline PlanarDiagram build_diagram(const FamilyDatum& d) { return build_diagram(d, oracle_limit()); }

// Canonical minimal-candidate diagram for a reduced closure form.
PlanarDiagram build_closure_diagram(const ClosureForm& cf);

}  // namespace twistrec
