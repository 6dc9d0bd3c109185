#pragma once

#include <string>
#include <vector>

#include "mts/triple_system.hpp"

namespace mts {

// A cyclic arrangement of distinct points, stored rotated so the least point
// comes first. Rotations compare equal; a sequencing and its reversal do not.
class Sequencing {
  public:
    explicit Sequencing(std::vector<Point> order);

    const std::vector<Point>& order() const { return order_; }
    int size() const { return static_cast<int>(order_.size()); }

    // Accepts the space-separated form and, for single-digit points, the
    // compact digit string used for small orders (e.g. "023471856").
    static Sequencing parse(const std::string& text);
    // Space-separated form.
    std::string str() const;

    friend bool operator==(const Sequencing&, const Sequencing&) = default;
    friend auto operator<=>(const Sequencing&, const Sequencing&) = default;

  private:
    std::vector<Point> order_;
};

// True iff walking the cycle forward from x meets y before z.
bool in_cyclic_order(const Sequencing& d, Point x, Point y, Point z);

bool contains_triple(const Sequencing& d, const CyclicTriple& t);

// True iff no triple of ts is both contained in d and within a window of ell
// cyclically consecutive points of d.
bool is_l_good(const Sequencing& d, const TripleSystem& ts, int ell);

// Largest ell in [3, v] for which d is ell-good; 2 when d is not even 3-good.
int max_good_l(const Sequencing& d, const TripleSystem& ts);

// floor((v-1)/2), the upper bound on ell over all complete systems of order v.
int bound_l(int v);

}  // namespace mts
