#pragma once

#include <optional>
#include <vector>

#include "mts/triple_system.hpp"

namespace mts {

// Lexicographically least relabelling of a complete system: the sorted triple
// list that is minimal over all v! point permutations, plus one permutation
// achieving it. Equality ignores the certifying permutation.
struct CanonicalForm {
    int v = 0;
    std::vector<CyclicTriple> triples;  // sorted canonical triples, relabelled
    std::vector<Point> relabelling;     // relabelling[original point] = new label

    TripleSystem as_system() const;
};

bool operator==(const CanonicalForm& lhs, const CanonicalForm& rhs);
bool operator<(const CanonicalForm& lhs, const CanonicalForm& rhs);

// Exact minimal relabelling by pruned backtracking over partial assignments.
// Requires a valid complete system with v <= 12.
CanonicalForm canonical_form(const TripleSystem& ts);

// Some permutation mapping a.triples onto b.triples, if one exists.
std::optional<std::vector<Point>> find_isomorphism(const TripleSystem& a, const TripleSystem& b);

bool is_isomorphic(const TripleSystem& a, const TripleSystem& b);

// Every triple reversed: (a,b,c) -> (c,b,a). The converse of a complete
// system is complete, and a sequencing is ell-good for a system exactly when
// its reversal is ell-good for the converse.
TripleSystem converse(const TripleSystem& ts);

// Equivalence under relabelling combined with optional global reversal. The
// census counts per order (1, 1, 3, 18, 143) are classes of this
// relation: under plain relabelling alone the orders 7, 9, 10 split further
// (e.g. 4 classes at v=7, checked against the exhaustive labelled count).
// Enumeration deduplicates by this relation.
bool is_equivalent(const TripleSystem& a, const TripleSystem& b);

// Relabelling invariant: for each point x, the sorted cycle lengths of the
// digraph {(y,z) : (x,y,z) in ts}; profiles collected over all x and sorted.
// Equal profiles are necessary (not sufficient) for isomorphism.
std::vector<std::vector<int>> cycle_profile(const TripleSystem& ts);

}  // namespace mts
