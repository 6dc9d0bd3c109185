#pragma once

#include <optional>
#include <vector>

#include "mts/triple_system.hpp"

// Shared low-level kernels operating on third-point matrices, without the
// validation that the public entry points perform. succ[p*v+q] is the third
// point of the triple covering directed edge (p,q), or -1.

namespace mts::detail {

std::vector<int> succ_from_triples(int v, const std::vector<CyclicTriple>& triples);

std::vector<std::vector<int>> profile_from_succ(int v, const std::vector<int>& succ);

std::optional<std::vector<Point>> iso_from_succ(int v, const std::vector<int>& sa,
                                                const std::vector<int>& sb);

// Lexicographically least sorted triple list over all v! relabellings; the
// achieving permutation is written to *relabelling when non-null.
std::vector<CyclicTriple> canonical_triples(int v, const std::vector<CyclicTriple>& triples,
                                            std::vector<Point>* relabelling);

}  // namespace mts::detail
