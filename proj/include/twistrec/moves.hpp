#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "twistrec/diagram.hpp"

namespace twistrec {

// Reidemeister rewrites on PD codes.  Every function returns a diagram passed
// through oriented(), so slot 0 is again the incoming under-edge.

enum class Move { R1Add, R1Remove, R2Add, R2Remove, R3 };
std::string to_string(Move m);

// A corner walk around one face: (crossing, slot) darts, face on the left.
using Dart = std::pair<int, int>;
std::vector<std::vector<Dart>> faces(const PlanarDiagram& d);

// Kink on the edge leaving dart (c, slot); variant 0..3 picks side and over/under.
PlanarDiagram r1_add(const PlanarDiagram& d, Dart at, int variant);
// Removes the kink at crossing c, if c is one.
std::optional<PlanarDiagram> r1_remove(const PlanarDiagram& d, int c);
// Pushes the edge of dart a across the edge of dart b; both must lie on one face.
std::optional<PlanarDiagram> r2_add(const PlanarDiagram& d, Dart a, Dart b, bool a_over);
// Removes the bigon face f when one strand is over at both of its corners.
std::optional<PlanarDiagram> r2_remove(const PlanarDiagram& d, const std::vector<Dart>& bigon);
// Slides the strand of the triangle edge starting at corner `which` past the opposite crossing.
std::optional<PlanarDiagram> r3(const PlanarDiagram& d, const std::vector<Dart>& triangle, int which);

// One random applicable move; nullopt if none applies (crossingless diagrams).
// grow_limit caps the crossing count reached by additions.
std::optional<Move> random_move(PlanarDiagram& d, std::mt19937_64& rng, int grow_limit);

}  // namespace twistrec
