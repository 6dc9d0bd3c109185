#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mts/triple_system.hpp"

namespace mts {

// True iff a complete system of order v exists: v = 0 or 1 mod 3, v != 6.
bool admissible(int v);

struct EnumerateOptions {
    long long node_budget = -1;  // generation-tree nodes; -1 = unlimited
    int jobs = 1;
    std::string checkpoint_path;  // when set, progress survives interruption
    bool resume = false;          // continue from checkpoint_path
    std::function<void(long long done, long long total)> progress;  // frontier progress
};

// All complete systems of order v up to isomorphism, one canonical
// representative per class, sorted by canonical form. Guarded to v <= 10.
std::vector<TripleSystem> enumerate_mts(int v, const EnumerateOptions& opts = {});

struct Table1Row {
    int v = 0;
    long long designs = 0;
    long long three_good = 0;
    long long four_good = 0;
};

// Classifies every enumerated design of order v by its optimal ell.
Table1Row classify_all(int v, const EnumerateOptions& eopts = {}, int jobs = 1);

}  // namespace mts
