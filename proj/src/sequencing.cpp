#include "mts/sequencing.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace mts {

Sequencing::Sequencing(std::vector<Point> order) : order_(std::move(order)) {
    if (order_.empty()) throw std::invalid_argument("sequencing must be non-empty");
    auto min_it = std::min_element(order_.begin(), order_.end());
    std::rotate(order_.begin(), min_it, order_.end());
    auto sorted = order_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("sequencing points must be distinct");
    }
    if (sorted.front() < 0) throw std::invalid_argument("sequencing points must be >= 0");
}

Sequencing Sequencing::parse(const std::string& text) {
    std::vector<Point> pts;
    if (text.find(' ') == std::string::npos && !text.empty() &&
        std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
        for (char c : text) pts.push_back(c - '0');
    } else {
        std::istringstream is(text);
        Point p;
        while (is >> p) pts.push_back(p);
        if (!is.eof()) throw std::invalid_argument("bad sequencing text: " + text);
    }
    if (pts.empty()) throw std::invalid_argument("bad sequencing text: " + text);
    return Sequencing(pts);
}

std::string Sequencing::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (i) os << ' ';
        os << order_[i];
    }
    return os.str();
}

namespace {

// positions[p] = index of point p in d; throws if d is not a permutation of 0..v-1
std::vector<int> position_index(const Sequencing& d, int v) {
    if (d.size() != v) {
        throw std::invalid_argument("sequencing has " + std::to_string(d.size()) +
                                    " points, system has v=" + std::to_string(v));
    }
    std::vector<int> pos(v, -1);
    for (int i = 0; i < v; ++i) {
        Point p = d.order()[i];
        if (p < 0 || p >= v) {
            throw std::invalid_argument("sequencing point " + std::to_string(p) + " outside [0," +
                                        std::to_string(v) + ")");
        }
        pos[p] = i;
    }
    return pos;
}

// number of cyclically consecutive positions in the smallest window covering
// the three given positions
int min_window_span(int pa, int pb, int pc, int v) {
    int s[3] = {pa, pb, pc};
    std::sort(s, s + 3);
    int g0 = s[1] - s[0];
    int g1 = s[2] - s[1];
    int g2 = v - s[2] + s[0];
    return v - std::max({g0, g1, g2}) + 1;
}

}  // namespace

bool in_cyclic_order(const Sequencing& d, Point x, Point y, Point z) {
    if (x == y || y == z || x == z) {
        throw std::invalid_argument("in_cyclic_order needs distinct points");
    }
    const auto& ord = d.order();
    int v = d.size();
    int px = -1, py = -1, pz = -1;
    for (int i = 0; i < v; ++i) {
        if (ord[i] == x) px = i;
        if (ord[i] == y) py = i;
        if (ord[i] == z) pz = i;
    }
    if (px < 0 || py < 0 || pz < 0) {
        throw std::invalid_argument("points not in sequencing");
    }
    int ry = (py - px + v) % v;
    int rz = (pz - px + v) % v;
    return ry < rz;
}

bool contains_triple(const Sequencing& d, const CyclicTriple& t) {
    return in_cyclic_order(d, t.a(), t.b(), t.c());
}

bool is_l_good(const Sequencing& d, const TripleSystem& ts, int ell) {
    if (ell < 3) throw std::invalid_argument("ell must be >= 3");
    int v = ts.v;
    auto pos = position_index(d, v);
    int leff = std::min(ell, v);
    for (const auto& t : ts.triples) {
        int pa = pos[t.a()], pb = pos[t.b()], pc = pos[t.c()];
        int ry = (pb - pa + v) % v;
        int rz = (pc - pa + v) % v;
        if (ry >= rz) continue;  // not contained in d
        if (min_window_span(pa, pb, pc, v) <= leff) return false;
    }
    return true;
}

int max_good_l(const Sequencing& d, const TripleSystem& ts) {
    int v = ts.v;
    auto pos = position_index(d, v);
    int min_span = v + 1;
    for (const auto& t : ts.triples) {
        int pa = pos[t.a()], pb = pos[t.b()], pc = pos[t.c()];
        int ry = (pb - pa + v) % v;
        int rz = (pc - pa + v) % v;
        if (ry >= rz) continue;
        min_span = std::min(min_span, min_window_span(pa, pb, pc, v));
    }
    if (min_span > v) return v;  // no triple of ts is contained in d at all
    int best = min_span - 1;
    return best < 3 ? 2 : best;
}

int bound_l(int v) {
    if (v < 3) throw std::invalid_argument("bound_l needs v >= 3");
    return (v - 1) / 2;
}

}  // namespace mts
