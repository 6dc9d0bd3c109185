#include "mts/triple_system.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace mts {

CyclicTriple::CyclicTriple(Point a, Point b, Point c) {
    if (a == b || b == c || a == c) {
        std::ostringstream os;
        os << "cyclic triple points must be distinct: (" << a << ',' << b << ',' << c << ')';
        throw std::invalid_argument(os.str());
    }
    // rotate the least point to the front
    if (a <= b && a <= c) {
        pts_ = {a, b, c};
    } else if (b <= a && b <= c) {
        pts_ = {b, c, a};
    } else {
        pts_ = {c, a, b};
    }
}

std::array<std::pair<Point, Point>, 3> CyclicTriple::edges() const {
    return {{{pts_[0], pts_[1]}, {pts_[1], pts_[2]}, {pts_[2], pts_[0]}}};
}

bool CyclicTriple::contains(Point p) const {
    return pts_[0] == p || pts_[1] == p || pts_[2] == p;
}

std::string to_string(const CyclicTriple& t) {
    std::ostringstream os;
    os << '(' << t.a() << ',' << t.b() << ',' << t.c() << ')';
    return os.str();
}

bool TripleSystem::contains(const CyclicTriple& t) const {
    return std::find(triples.begin(), triples.end(), t) != triples.end();
}

bool operator==(const TripleSystem& lhs, const TripleSystem& rhs) {
    if (lhs.v != rhs.v || lhs.kind != rhs.kind) return false;
    auto a = lhs.triples;
    auto b = rhs.triples;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

namespace {

std::string edge_str(Point p, Point q) {
    std::ostringstream os;
    os << '(' << p << ',' << q << ')';
    return os.str();
}

bool admissible_order(int v) { return (v % 3 == 0 || v % 3 == 1) && v != 6; }

}  // namespace

ValidationReport validate(const TripleSystem& ts) {
    ValidationReport rep;
    auto flag = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };

    if (ts.v < 3) {
        flag("v must be >= 3, got " + std::to_string(ts.v));
        return rep;
    }

    bool in_range = true;
    for (const auto& t : ts.triples) {
        for (Point p : t.points()) {
            if (p < 0 || p >= ts.v) {
                flag("triple " + to_string(t) + " uses point " + std::to_string(p) +
                     " outside [0," + std::to_string(ts.v) + ")");
                in_range = false;
            }
        }
    }
    if (!in_range) return rep;

    {
        auto sorted = ts.triples;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (sorted[i] == sorted[i - 1] && (i == 1 || !(sorted[i] == sorted[i - 2]))) {
                flag("duplicate triple " + to_string(sorted[i]));
            }
        }
    }

    // tabulate directed edge coverage
    std::vector<int> cover(static_cast<std::size_t>(ts.v) * ts.v, 0);
    for (const auto& t : ts.triples) {
        for (auto [p, q] : t.edges()) cover[p * ts.v + q] += 1;
    }
    for (Point p = 0; p < ts.v; ++p) {
        for (Point q = 0; q < ts.v; ++q) {
            if (p == q) continue;
            int n = cover[p * ts.v + q];
            if (n > 1) {
                flag("edge " + edge_str(p, q) +
                     (n == 2 ? " covered twice" : " covered " + std::to_string(n) + " times"));
            } else if (n == 0 && ts.kind == Kind::complete) {
                flag("edge " + edge_str(p, q) + " uncovered");
            }
        }
    }

    if (ts.kind == Kind::complete) {
        if (!admissible_order(ts.v)) {
            flag("no complete system of order " + std::to_string(ts.v) +
                 " exists (need v % 3 in {0,1}, v != 6)");
        }
        long long want = static_cast<long long>(ts.v) * (ts.v - 1) / 3;
        if (static_cast<long long>(ts.triples.size()) != want) {
            flag("triple count " + std::to_string(ts.triples.size()) +
                 " != v(v-1)/3 = " + std::to_string(want));
        }
    }
    return rep;
}

TripleSystem develop_mod_v(const std::vector<CyclicTriple>& base, int v) {
    if (v < 3) throw std::invalid_argument("develop_mod_v needs v >= 3");
    for (const auto& t : base) {
        for (Point p : t.points()) {
            if (p < 0 || p >= v) {
                throw std::invalid_argument("base triple " + to_string(t) + " uses point outside [0," +
                                            std::to_string(v) + ")");
            }
        }
    }
    TripleSystem ts;
    ts.v = v;
    ts.kind = Kind::partial;
    for (const auto& t : base) {
        for (int i = 0; i < v; ++i) {
            CyclicTriple shifted((t.a() + i) % v, (t.b() + i) % v, (t.c() + i) % v);
            if (!ts.contains(shifted)) ts.triples.push_back(shifted);
        }
    }
    ts.kind = Kind::complete;
    if (!validate(ts).ok) ts.kind = Kind::partial;
    return ts;
}

TripleSystem remove_triple(const TripleSystem& ts, const CyclicTriple& t) {
    auto it = std::find(ts.triples.begin(), ts.triples.end(), t);
    if (it == ts.triples.end()) {
        throw std::invalid_argument("triple not present: " + to_string(t));
    }
    TripleSystem out = ts;
    out.kind = Kind::partial;
    out.triples.erase(out.triples.begin() + (it - ts.triples.begin()));
    return out;
}

EdgeTable::EdgeTable(const TripleSystem& ts) : v_(ts.v) {
    auto rep = validate(ts);
    if (!rep.ok) {
        throw std::invalid_argument("edge table requires a valid system; first violation: " +
                                    rep.violations.front());
    }
    third_.assign(static_cast<std::size_t>(v_) * v_, -1);
    index_.assign(static_cast<std::size_t>(v_) * v_, -1);
    for (std::size_t i = 0; i < ts.triples.size(); ++i) {
        const auto& t = ts.triples[i];
        const auto& p = t.points();
        for (int r = 0; r < 3; ++r) {
            Point from = p[r], to = p[(r + 1) % 3], other = p[(r + 2) % 3];
            third_[from * v_ + to] = other;
            index_[from * v_ + to] = static_cast<int>(i);
        }
    }
}

bool EdgeTable::contains_triple(const CyclicTriple& t) const {
    return contains_triple(t.a(), t.b(), t.c());
}

std::vector<std::pair<Point, Point>> EdgeTable::uncovered_edges() const {
    std::vector<std::pair<Point, Point>> out;
    for (Point p = 0; p < v_; ++p) {
        for (Point q = 0; q < v_; ++q) {
            if (p != q && !covers(p, q)) out.emplace_back(p, q);
        }
    }
    return out;
}

TripleSystem parse_design(std::istream& in) {
    std::string line;
    auto next_content_line = [&](std::string& out) -> bool {
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
                line.pop_back();
            }
            if (line.empty()) continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_content_line(header)) throw std::runtime_error("design file is empty");
    std::istringstream hs(header);
    std::string tag, vfield, kfield;
    hs >> tag >> vfield >> kfield;
    if (tag != "mts" || vfield.rfind("v=", 0) != 0 || kfield.rfind("kind=", 0) != 0) {
        throw std::runtime_error("bad design header: " + header);
    }
    TripleSystem ts;
    ts.v = std::stoi(vfield.substr(2));
    std::string kind = kfield.substr(5);
    if (kind == "complete") {
        ts.kind = Kind::complete;
    } else if (kind == "partial") {
        ts.kind = Kind::partial;
    } else {
        throw std::runtime_error("bad design kind: " + kind);
    }

    std::string body;
    while (next_content_line(body)) {
        std::istringstream ls(body);
        Point a, b, c;
        if (!(ls >> a >> b >> c)) throw std::runtime_error("bad triple line: " + body);
        std::string rest;
        if (ls >> rest) throw std::runtime_error("bad triple line: " + body);
        ts.triples.emplace_back(a, b, c);
    }
    return ts;
}

TripleSystem read_design(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open design file: " + path);
    try {
        return parse_design(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string format_design(const TripleSystem& ts) {
    std::ostringstream os;
    os << "mts v=" << ts.v << " kind=" << (ts.kind == Kind::complete ? "complete" : "partial") << '\n';
    for (const auto& t : ts.triples) {
        os << t.a() << ' ' << t.b() << ' ' << t.c() << '\n';
    }
    return os.str();
}

void write_design(const TripleSystem& ts, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write design file: " + path);
    out << format_design(ts);
}

}  // namespace mts
