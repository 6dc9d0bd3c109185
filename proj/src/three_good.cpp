#include "mts/three_good.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mts {

namespace {

void require_window_free(const EdgeTable& et, Point a, Point b, Point c, const char* where) {
    if (et.contains_triple(CyclicTriple(a, b, c))) {
        std::ostringstream os;
        os << where << ": window (" << a << ',' << b << ',' << c << ") is a system triple";
        throw std::logic_error(os.str());
    }
}

void require_triple(const EdgeTable& et, Point a, Point b, Point c, const char* where) {
    if (!et.contains_triple(CyclicTriple(a, b, c))) {
        std::ostringstream os;
        os << where << ": expected triple (" << a << ',' << b << ',' << c << ") absent";
        throw std::logic_error(os.str());
    }
}

Sequencing verified(std::vector<Point> order, const TripleSystem& ts, const char* where) {
    Sequencing d(std::move(order));
    if (!is_l_good(d, ts, 3)) {
        throw std::logic_error(std::string(where) + ": output failed 3-good verification");
    }
    return d;
}

std::vector<Point> rotate_to(const std::vector<Point>& cycle, Point start) {
    auto it = std::find(cycle.begin(), cycle.end(), start);
    if (it == cycle.end()) throw std::invalid_argument("start vertex not in its cycle");
    std::vector<Point> out(it, cycle.end());
    out.insert(out.end(), cycle.begin(), it);
    return out;
}

int cycle_of(const NeighborDigraph& g, Point p) {
    for (std::size_t i = 0; i < g.cycles.size(); ++i) {
        if (std::find(g.cycles[i].begin(), g.cycles[i].end(), p) != g.cycles[i].end()) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

std::string cycle_lengths(const NeighborDigraph& g) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < g.cycles.size(); ++i) {
        if (i) os << ',';
        os << g.cycles[i].size();
    }
    os << ']';
    return os.str();
}

}  // namespace

const char* to_string(InsertCase c) {
    switch (c) {
        case InsertCase::long_cycle: return "long-cycle";
        case InsertCase::two_long: return "two-long-cycles";
        case InsertCase::two_2cycles: return "two-2-cycles";
        case InsertCase::two_plus_rest: return "2-cycle-plus-rest";
        case InsertCase::patch_search: return "patch-search";
    }
    return "?";
}

NeighborDigraph neighbor_digraph(const TripleSystem& ts, Point x) {
    if (ts.kind != Kind::complete) {
        throw std::invalid_argument("neighbor_digraph requires a complete system");
    }
    EdgeTable et(ts);
    if (x < 0 || x >= ts.v) throw std::invalid_argument("pivot outside [0,v)");

    NeighborDigraph g;
    g.pivot = x;
    g.successor.assign(ts.v, -1);
    std::vector<int> indeg(ts.v, 0);
    for (Point y = 0; y < ts.v; ++y) {
        if (y == x) continue;
        Point z = et.third(x, y);
        if (z == y || z == x) throw std::logic_error("degenerate successor in neighbor digraph");
        g.successor[y] = z;
        ++indeg[z];
    }
    for (Point y = 0; y < ts.v; ++y) {
        if (y != x && indeg[y] != 1) {
            throw std::logic_error("neighbor digraph in-degree != 1; system is not a valid MTS");
        }
    }
    std::vector<char> seen(ts.v, 0);
    seen[x] = 1;
    for (Point y = 0; y < ts.v; ++y) {
        if (seen[y]) continue;
        std::vector<Point> cycle;
        Point cur = y;
        while (!seen[cur]) {
            seen[cur] = 1;
            cycle.push_back(cur);
            cur = g.successor[cur];
        }
        if (cycle.size() < 2) throw std::logic_error("neighbor digraph cycle of length 1");
        g.cycles.push_back(std::move(cycle));
    }
    return g;
}

BaseSequencing base_sequencing(const TripleSystem& ts, const NeighborDigraph& g,
                               const std::vector<Point>& starts) {
    if (starts.size() != g.cycles.size()) {
        throw std::invalid_argument("one start vertex per cycle required");
    }
    EdgeTable et(ts);
    BaseSequencing base;
    base.pivot = g.pivot;
    for (std::size_t i = 0; i < g.cycles.size(); ++i) {
        auto rotated = rotate_to(g.cycles[i], starts[i]);
        base.order.insert(base.order.end(), rotated.begin(), rotated.end());
    }
    int n = static_cast<int>(base.order.size());
    for (int i = 0; i < n; ++i) {
        require_window_free(et, base.order[i], base.order[(i + 1) % n], base.order[(i + 2) % n],
                            "base sequencing");
    }
    return base;
}

BaseSequencing base_sequencing(const TripleSystem& ts, const NeighborDigraph& g) {
    std::vector<Point> starts;
    starts.reserve(g.cycles.size());
    for (const auto& c : g.cycles) starts.push_back(c.front());
    return base_sequencing(ts, g, starts);
}

Sequencing insert_case_long_cycle(const TripleSystem& ts, Point x, const NeighborDigraph& g) {
    int ci = -1;
    for (std::size_t i = 0; i < g.cycles.size(); ++i) {
        if (g.cycles[i].size() >= 6) {
            ci = static_cast<int>(i);
            break;
        }
    }
    if (ci < 0) throw std::runtime_error("case not applicable: no cycle of length >= 6");
    EdgeTable et(ts);

    const auto& C = g.cycles[ci];
    std::vector<Point> dx(C.begin(), C.end());
    for (std::size_t i = 0; i < g.cycles.size(); ++i) {
        if (static_cast<int>(i) == ci) continue;
        dx.insert(dx.end(), g.cycles[i].begin(), g.cycles[i].end());
    }

    Point c1 = C[0], c2 = C[1], c3 = C[2], c4 = C[3], c5 = C[4], c6 = C[5];
    Point last = dx.back();

    require_triple(et, x, c1, c2, "long cycle case");
    require_triple(et, x, c2, c3, "long cycle case");
    require_triple(et, x, c3, c4, "long cycle case");
    require_triple(et, x, c4, c5, "long cycle case");
    require_triple(et, x, c5, c6, "long cycle case");

    // c1 c2 c3 c4 ... -> c3 c4 c1 x c2 ...
    std::vector<Point> d = {c3, c4, c1, x, c2};
    d.insert(d.end(), dx.begin() + 4, dx.end());

    require_window_free(et, last, c3, c4, "long cycle case");
    require_window_free(et, c3, c4, c1, "long cycle case");
    require_window_free(et, c4, c1, x, "long cycle case");
    require_window_free(et, c1, x, c2, "long cycle case");
    require_window_free(et, x, c2, c5, "long cycle case");
    require_window_free(et, c2, c5, c6, "long cycle case");

    return verified(std::move(d), ts, "long cycle case");
}

Sequencing insert_case_two_long(const TripleSystem& ts, Point x, const NeighborDigraph& g) {
    int ai = -1, bi = -1;
    for (std::size_t i = 0; i < g.cycles.size(); ++i) {
        if (g.cycles[i].size() >= 3) {
            if (ai < 0) {
                ai = static_cast<int>(i);
            } else {
                bi = static_cast<int>(i);
                break;
            }
        }
    }
    if (bi < 0) throw std::runtime_error("case not applicable: need two cycles of length >= 3");
    EdgeTable et(ts);

    const auto& A = g.cycles[ai];
    const auto& B = g.cycles[bi];
    int k = static_cast<int>(A.size());

    Point p4 = A[k - 1], p3 = A[k - 2], py = A[(k + k - 3) % k];
    Point p1 = B[0], p2 = B[1], pz = B[2];
    Point p5 = A[0];  // successor of p4; coincides with py when A has length 3

    require_triple(et, x, p1, p2, "two long cycles case");
    require_triple(et, x, p2, pz, "two long cycles case");
    require_triple(et, x, py, p3, "two long cycles case");
    require_triple(et, x, p3, p4, "two long cycles case");
    require_triple(et, x, p4, p5, "two long cycles case");

    // D_x = A B others with pattern ... py p3 p4 | p1 p2 pz ...; the pair
    // (p4, p1) becomes (p1, x, p4)
    std::vector<Point> d(A.begin(), A.end() - 1);
    d.push_back(p1);
    d.push_back(x);
    d.push_back(p4);
    d.insert(d.end(), B.begin() + 1, B.end());
    for (std::size_t i = 0; i < g.cycles.size(); ++i) {
        if (static_cast<int>(i) == ai || static_cast<int>(i) == bi) continue;
        d.insert(d.end(), g.cycles[i].begin(), g.cycles[i].end());
    }

    require_window_free(et, py, p3, p1, "two long cycles case");
    require_window_free(et, p3, p1, x, "two long cycles case");
    require_window_free(et, p1, x, p4, "two long cycles case");
    require_window_free(et, x, p4, p2, "two long cycles case");
    require_window_free(et, p4, p2, pz, "two long cycles case");

    return verified(std::move(d), ts, "two long cycles case");
}

Sequencing insert_case_two_2cycles(const TripleSystem& ts, Point x, const NeighborDigraph& g) {
    if (ts.v < 7) throw std::runtime_error("case not applicable: v < 7");
    std::vector<int> twos;
    for (std::size_t i = 0; i < g.cycles.size(); ++i) {
        if (g.cycles[i].size() == 2) twos.push_back(static_cast<int>(i));
    }
    if (twos.size() < 2) throw std::runtime_error("case not applicable: need two 2-cycles");
    EdgeTable et(ts);
    int s = static_cast<int>(g.cycles.size());

    for (int i34 : twos) {
        for (int i12 : twos) {
            if (i12 == i34) continue;
            for (int r34 = 0; r34 < 2; ++r34) {
                for (int r12 = 0; r12 < 2; ++r12) {
                    Point p3 = g.cycles[i34][r34], p4 = g.cycles[i34][1 - r34];
                    Point p1 = g.cycles[i12][r12], p2 = g.cycles[i12][1 - r12];

                    for (Point y = 0; y < ts.v; ++y) {
                        if (y == x || y == p1 || y == p2 || y == p3 || y == p4) continue;
                        if (et.contains_triple(CyclicTriple(p3, p1, y))) continue;
                        for (Point z = 0; z < ts.v; ++z) {
                            if (z == x || z == y || z == p1 || z == p2 || z == p3 || z == p4) {
                                continue;
                            }
                            if (et.contains_triple(CyclicTriple(p4, p2, z))) continue;
                            int cy = cycle_of(g, y), cz = cycle_of(g, z);
                            bool arrangeable =
                                cy != cz || (s == 3 && g.successor[y] == z);
                            if (!arrangeable) continue;

                            // D_x = [p3 p4][p1 p2][z ...]...[... y]; the pair
                            // (p4, p1) becomes (p1, x, p4)
                            std::vector<Point> d = {p3, p1, x, p4, p2};
                            if (cy != cz) {
                                auto zc = rotate_to(g.cycles[cz], z);
                                d.insert(d.end(), zc.begin(), zc.end());
                                for (std::size_t i = 0; i < g.cycles.size(); ++i) {
                                    int ii = static_cast<int>(i);
                                    if (ii == i34 || ii == i12 || ii == cz || ii == cy) continue;
                                    d.insert(d.end(), g.cycles[i].begin(), g.cycles[i].end());
                                }
                                auto yc = rotate_to(g.cycles[cy], g.successor[y]);
                                d.insert(d.end(), yc.begin(), yc.end());
                            } else {
                                auto c = rotate_to(g.cycles[cz], z);
                                d.insert(d.end(), c.begin(), c.end());
                            }

                            require_triple(et, x, p1, p2, "two 2-cycles case");
                            require_triple(et, x, p2, p1, "two 2-cycles case");
                            require_triple(et, x, p3, p4, "two 2-cycles case");
                            require_triple(et, x, p4, p3, "two 2-cycles case");
                            require_window_free(et, y, p3, p1, "two 2-cycles case");
                            require_window_free(et, p3, p1, x, "two 2-cycles case");
                            require_window_free(et, p1, x, p4, "two 2-cycles case");
                            require_window_free(et, x, p4, p2, "two 2-cycles case");
                            require_window_free(et, p4, p2, z, "two 2-cycles case");

                            return verified(std::move(d), ts, "two 2-cycles case");
                        }
                    }
                }
            }
        }
    }
    throw std::runtime_error("no admissible y,z for the two 2-cycles case (v >= 7 violation)");
}

Sequencing insert_case_2_plus_rest(const TripleSystem& ts, Point x, const NeighborDigraph& g) {
    if (g.cycles.size() != 2) {
        throw std::runtime_error("case not applicable: need exactly two cycles");
    }
    int ti = g.cycles[0].size() == 2 ? 0 : (g.cycles[1].size() == 2 ? 1 : -1);
    if (ti < 0) throw std::runtime_error("case not applicable: no 2-cycle");
    int li = 1 - ti;
    const auto& L = g.cycles[li];
    int m = static_cast<int>(L.size());
    if (m < 4) throw std::runtime_error("case not applicable: long cycle shorter than 4");
    EdgeTable et(ts);

    Point l1 = L[0], l2 = L[1], l3 = L[2], l4 = L[3], lm = L[m - 1], lm1 = L[m - 2];
    Point one = g.cycles[ti][0], two = g.cycles[ti][1];
    // swap the 2-cycle labels if needed so that (l3,l2,two) is not a triple;
    // both orientations failing would put the edge (l3,l2) in two triples
    if (et.contains_triple(CyclicTriple(l3, l2, two))) std::swap(one, two);
    if (et.contains_triple(CyclicTriple(l3, l2, two))) {
        throw std::logic_error("2-cycle-plus-rest case: both orientations blocked");
    }

    require_triple(et, x, one, two, "2-cycle-plus-rest case");
    require_triple(et, x, two, one, "2-cycle-plus-rest case");
    require_triple(et, x, l1, l2, "2-cycle-plus-rest case");
    require_triple(et, x, l2, l3, "2-cycle-plus-rest case");
    require_triple(et, x, l3, l4, "2-cycle-plus-rest case");
    require_triple(et, x, lm1, lm, "2-cycle-plus-rest case");
    require_triple(et, x, lm, l1, "2-cycle-plus-rest case");

    // D_x = one two l1 l2 l3 ... lm; the block (one two l1 l2) becomes
    // (l1 one x l2 two)
    std::vector<Point> d = {l1, one, x, l2, two};
    d.insert(d.end(), L.begin() + 2, L.end());

    require_window_free(et, lm1, lm, l1, "2-cycle-plus-rest case");
    require_window_free(et, lm, l1, one, "2-cycle-plus-rest case");
    require_window_free(et, l1, one, x, "2-cycle-plus-rest case");
    require_window_free(et, one, x, l2, "2-cycle-plus-rest case");
    require_window_free(et, x, l2, two, "2-cycle-plus-rest case");
    require_window_free(et, l2, two, l3, "2-cycle-plus-rest case");
    require_window_free(et, two, l3, l4, "2-cycle-plus-rest case");

    return verified(std::move(d), ts, "2-cycle-plus-rest case");
}

namespace {

// Last-resort construction for the shapes the case analysis misses: try the
// arrangements of the non-pivot points after x in lexicographic order and
// return the first one that verifies. Bounded by (v-1)! in principle; in
// practice only the three-2-cycles shape at v = 7 reaches here, where the
// first hit comes within a few hundred arrangements.
Sequencing patch_search(const TripleSystem& ts, Point x) {
    std::vector<Point> rest;
    for (Point p = 0; p < ts.v; ++p) {
        if (p != x) rest.push_back(p);
    }
    do {
        std::vector<Point> order{x};
        order.insert(order.end(), rest.begin(), rest.end());
        Sequencing d(std::move(order));
        if (is_l_good(d, ts, 3)) return d;
    } while (std::next_permutation(rest.begin(), rest.end()));
    throw std::logic_error("patch search exhausted without a 3-good sequencing");
}

}  // namespace

Sequencing three_good_sequencing(const TripleSystem& ts, Point x, InsertCase* used_case) {
    if (ts.v < 7) throw std::invalid_argument("v < 7");
    auto g = neighbor_digraph(ts, x);

    int twos = 0, longs = 0;
    for (const auto& c : g.cycles) {
        if (c.size() == 2) ++twos;
        if (c.size() >= 3) ++longs;
    }

    InsertCase chosen;
    if (twos >= 2) {
        chosen = InsertCase::two_2cycles;
    } else if (twos == 1) {
        chosen = longs >= 2 ? InsertCase::two_long : InsertCase::two_plus_rest;
    } else {
        chosen = g.cycles.size() >= 2 ? InsertCase::two_long : InsertCase::long_cycle;
    }
    if (used_case) *used_case = chosen;

    try {
        switch (chosen) {
            case InsertCase::long_cycle: return insert_case_long_cycle(ts, x, g);
            case InsertCase::two_long: return insert_case_two_long(ts, x, g);
            case InsertCase::two_2cycles:
                try {
                    return insert_case_two_2cycles(ts, x, g);
                } catch (const std::runtime_error& e) {
                    // The selection of y,z can genuinely run out of options
                    // when the digraph is three 2-cycles; fall back to the
                    // verified patch search for exactly that failure.
                    if (std::string(e.what()).find("no admissible y,z") == std::string::npos) {
                        throw;
                    }
                    if (used_case) *used_case = InsertCase::patch_search;
                    return patch_search(ts, x);
                }
            case InsertCase::two_plus_rest: return insert_case_2_plus_rest(ts, x, g);
            case InsertCase::patch_search: break;  // never dispatched directly
        }
        throw std::logic_error("unreachable");
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << "classification gap: v=" << ts.v << " pivot=" << x << " cycles=" << cycle_lengths(g)
           << " case=" << to_string(chosen) << ": " << e.what();
        throw std::runtime_error(os.str());
    }
}

}  // namespace mts
