#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mts/sequencing.hpp"
#include "mts/triple_system.hpp"

namespace mts {

enum class FindMode { any, lex_least };

struct SearchOptions {
    int jobs = 1;
};

struct SearchStats {
    long long nodes = 0;
    double millis = 0.0;
};

// Exhaustive backtracking over cyclic sequencings (first position pinned to
// the least point, so each cyclic class is visited once; reversals are
// distinct). Returns the lexicographically least ell-good sequencing, or
// nullopt when none exists. Both modes run the same left-to-right search;
// `any` simply licenses the caller to treat the witness as arbitrary.
std::optional<Sequencing> find_l_good(const TripleSystem& ts, int ell,
                                      FindMode mode = FindMode::lex_least,
                                      const SearchOptions& opts = {}, SearchStats* stats = nullptr);

// Counting conventions. `linear` counts sequencings as linear arrangements,
// so every cyclic sequencing contributes v rotations; `rotation` identifies
// rotations and counts each cyclic sequencing once. Reversals are distinct
// under both. The library default is `linear`: it is the convention under
// which the order-9 reference designs count 18/36/324, as pinned down by
// the acceptance suite's brute-force cross-check of both conventions.
enum class CountConvention { linear, rotation };

long long count_l_good(const TripleSystem& ts, int ell,
                       CountConvention convention = CountConvention::linear,
                       const SearchOptions& opts = {}, SearchStats* stats = nullptr);

// Largest ell >= 3 admitting an ell-good sequencing, with a witness; (2,
// nullopt) when not even a 3-good sequencing exists. Probes up to bound_l(v)
// for complete systems and up to v for partial ones.
std::pair<int, std::optional<Sequencing>> optimal_l(const TripleSystem& ts,
                                                    const SearchOptions& opts = {});

// Checks count_l_good(ts, bound_l(v)+1) == 0 exhaustively. The probe is
// clamped up to 3 for v < 7, where bound_l(v)+1 would fall below the least
// meaningful ell.
bool verify_bound_exhaustive(const TripleSystem& ts, const SearchOptions& opts = {});

struct RemovalOutcome {
    CyclicTriple removed;
    bool found = false;
    std::optional<Sequencing> witness;
};

// For each triple of the complete system: whether deleting it leaves a
// partial system with an ell-good sequencing.
std::vector<RemovalOutcome> partial_removal_sweep(const TripleSystem& ts, int ell,
                                                  const SearchOptions& opts = {});

enum class Outcome { found, exhausted };

struct SearchReport {
    std::string design;
    int ell = 0;
    Outcome outcome = Outcome::exhausted;
    long long count = -1;  // -1 when the run was not a counting run
    std::optional<Sequencing> witness;
    long long nodes = 0;
    double millis = 0.0;
};

// design<TAB>ell<TAB>outcome<TAB>count<TAB>witness<TAB>nodes<TAB>ms
// Timing is suppressed ("-") unless include_timing is set, keeping default
// output byte-reproducible.
std::string to_tsv(const SearchReport& report, bool include_timing = false);

}  // namespace mts
