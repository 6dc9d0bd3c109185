#pragma once

#include <vector>

#include "mts/sequencing.hpp"
#include "mts/triple_system.hpp"

namespace mts {

// Functional digraph at a pivot x: (y,z) is an edge iff (x,y,z) is a triple.
// For a complete system this is a disjoint union of directed cycles of length
// >= 2 covering the non-pivot points.
struct NeighborDigraph {
    Point pivot = 0;
    std::vector<Point> successor;            // successor[y]; -1 at the pivot
    std::vector<std::vector<Point>> cycles;  // each rotated to its least vertex,
                                             // listed by least vertex
};

NeighborDigraph neighbor_digraph(const TripleSystem& ts, Point x);

// Cyclic arrangement of the non-pivot points: the digraph's cycles written out
// in order, each from its chosen start. No three cyclically consecutive points
// form a triple (verified on construction).
struct BaseSequencing {
    Point pivot = 0;
    std::vector<Point> order;
};

BaseSequencing base_sequencing(const TripleSystem& ts, const NeighborDigraph& g,
                               const std::vector<Point>& starts);
BaseSequencing base_sequencing(const TripleSystem& ts, const NeighborDigraph& g);

// The four pivot-insertion constructions. Each arranges the cycles to fit its
// pattern, splices the pivot in, asserts the per-window checks of its pattern,
// and verifies the result is 3-good before returning. Throws "case not
// applicable" when the cycle structure does not fit.
Sequencing insert_case_long_cycle(const TripleSystem& ts, Point x, const NeighborDigraph& g);
Sequencing insert_case_two_long(const TripleSystem& ts, Point x, const NeighborDigraph& g);
Sequencing insert_case_two_2cycles(const TripleSystem& ts, Point x, const NeighborDigraph& g);
Sequencing insert_case_2_plus_rest(const TripleSystem& ts, Point x, const NeighborDigraph& g);

// patch_search is the fallback when the two-2-cycles insertion has no
// admissible y,z. That selection can fail only when the digraph is three
// 2-cycles (so v = 7; both such designs exist, one being the doubled Fano
// plane, where every choice is blocked because the diagonal points of the
// quadrangle on the two chosen 2-cycles are collinear with the pivot). The
// fallback enumerates arrangements of the non-pivot points in lexicographic
// order and returns the first verified 3-good sequencing.
enum class InsertCase { long_cycle, two_long, two_2cycles, two_plus_rest, patch_search };

const char* to_string(InsertCase c);

// A verified 3-good sequencing for any complete system with v >= 7, built by
// classifying the pivot's digraph and dispatching to the matching insertion.
Sequencing three_good_sequencing(const TripleSystem& ts, Point x = 0,
                                 InsertCase* used_case = nullptr);

}  // namespace mts
