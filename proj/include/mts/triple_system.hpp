#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mts {

using Point = int;

// A directed 3-cycle (a,b,c) on distinct points, carrying the directed edges
// (a,b), (b,c), (c,a). Rotations denote the same triple; the stored form puts
// the least point first so rotation-equal triples compare equal.
class CyclicTriple {
  public:
    CyclicTriple(Point a, Point b, Point c);

    Point a() const { return pts_[0]; }
    Point b() const { return pts_[1]; }
    Point c() const { return pts_[2]; }
    const std::array<Point, 3>& points() const { return pts_; }

    std::array<std::pair<Point, Point>, 3> edges() const;
    bool contains(Point p) const;

    friend auto operator<=>(const CyclicTriple&, const CyclicTriple&) = default;

  private:
    std::array<Point, 3> pts_;
};

std::string to_string(const CyclicTriple& t);

enum class Kind { complete, partial };

// v points 0..v-1 plus a list of cyclic triples. `kind` declares whether the
// system covers every directed edge exactly once (complete) or at most once
// (partial); validate() checks the claim.
struct TripleSystem {
    int v = 3;
    Kind kind = Kind::partial;
    std::vector<CyclicTriple> triples;

    bool contains(const CyclicTriple& t) const;
};

// Set-level equality: triple order is presentation, not identity.
bool operator==(const TripleSystem& lhs, const TripleSystem& rhs);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate(const TripleSystem& ts);

// All translates {(x+i, y+i, z+i) mod v} of the base triples, duplicates
// collapsed. kind is set to complete exactly when the result validates as a
// complete system.
TripleSystem develop_mod_v(const std::vector<CyclicTriple>& base, int v);

TripleSystem remove_triple(const TripleSystem& ts, const CyclicTriple& t);

// (p,q) -> covering triple lookup for a validated system.
class EdgeTable {
  public:
    explicit EdgeTable(const TripleSystem& ts);

    int v() const { return v_; }
    bool covers(Point p, Point q) const { return third(p, q) >= 0; }
    // Third point of the triple covering directed edge (p,q), or -1.
    Point third(Point p, Point q) const { return third_[p * v_ + q]; }
    // Index into the owning system's triple list, or -1.
    int triple_index(Point p, Point q) const { return index_[p * v_ + q]; }
    bool contains_triple(Point a, Point b, Point c) const { return third(a, b) == c; }
    bool contains_triple(const CyclicTriple& t) const;
    std::vector<std::pair<Point, Point>> uncovered_edges() const;

  private:
    int v_;
    std::vector<Point> third_;
    std::vector<int> index_;
};

// Design file format: line 1 "mts v=<v> kind=<complete|partial>", then one
// triple per line "<a> <b> <c>"; '#' starts a comment line.
TripleSystem parse_design(std::istream& in);
TripleSystem read_design(const std::string& path);
std::string format_design(const TripleSystem& ts);
void write_design(const TripleSystem& ts, const std::string& path);

}  // namespace mts
