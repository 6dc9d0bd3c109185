#include "mts/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "detail.hpp"

namespace mts {

namespace detail {

std::vector<int> succ_from_triples(int v, const std::vector<CyclicTriple>& triples) {
    std::vector<int> succ(static_cast<std::size_t>(v) * v, -1);
    for (const auto& t : triples) {
        const auto& p = t.points();
        for (int r = 0; r < 3; ++r) {
            succ[p[r] * v + p[(r + 1) % 3]] = p[(r + 2) % 3];
        }
    }
    return succ;
}

std::vector<std::vector<int>> profile_from_succ(int v, const std::vector<int>& succ) {
    std::vector<std::vector<int>> profile;
    profile.reserve(v);
    std::vector<char> seen(v);
    for (Point x = 0; x < v; ++x) {
        std::vector<int> lengths;
        std::fill(seen.begin(), seen.end(), 0);
        seen[x] = 1;
        for (Point y = 0; y < v; ++y) {
            if (seen[y]) continue;
            int len = 0;
            Point cur = y;
            while (!seen[cur]) {
                seen[cur] = 1;
                cur = succ[x * v + cur];
                ++len;
            }
            lengths.push_back(len);
        }
        std::sort(lengths.begin(), lengths.end());
        profile.push_back(std::move(lengths));
    }
    std::sort(profile.begin(), profile.end());
    return profile;
}

namespace {

// Forced-extension isomorphism search: the images of two seed points propagate
// through third-point lookups; branching happens only when the assigned set
// closes under them (a proper subsystem), which is rare and small.
struct IsoSearch {
    int v;
    const std::vector<int>& sa;
    const std::vector<int>& sb;

    bool extend(std::vector<int>& map, std::vector<int>& inv, int assigned) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int p = 0; p < v; ++p) {
                if (map[p] < 0) continue;
                for (int q = 0; q < v; ++q) {
                    if (q == p || map[q] < 0) continue;
                    int w = sa[p * v + q];
                    int w2 = sb[map[p] * v + map[q]];
                    if (map[w] < 0) {
                        if (inv[w2] >= 0) return false;
                        map[w] = w2;
                        inv[w2] = w;
                        ++assigned;
                        changed = true;
                    } else if (map[w] != w2) {
                        return false;
                    }
                }
            }
        }
        if (assigned == v) return true;
        int s = 0;
        while (map[s] >= 0) ++s;
        for (int t = 0; t < v; ++t) {
            if (inv[t] >= 0) continue;
            auto map2 = map;
            auto inv2 = inv;
            map2[s] = t;
            inv2[t] = s;
            if (extend(map2, inv2, assigned + 1)) {
                map = std::move(map2);
                inv = std::move(inv2);
                return true;
            }
        }
        return false;
    }

    std::optional<std::vector<Point>> run() const {
        for (int b0 = 0; b0 < v; ++b0) {
            for (int b1 = 0; b1 < v; ++b1) {
                if (b1 == b0) continue;
                std::vector<int> map(v, -1), inv(v, -1);
                map[0] = b0;
                inv[b0] = 0;
                map[1] = b1;
                inv[b1] = 1;
                if (extend(map, inv, 2)) return map;
            }
        }
        return std::nullopt;
    }
};

// Minimal-image search. Labels are assigned to source points one at a time;
// each node is compared against the best full encoding through the prefix of
// the sorted relabelled triple list that the partial assignment already
// determines. Unassigned points always end up with labels >= the number
// assigned so far, which is what keeps partial sort positions final.
//
// Tuples are packed into uint32 keys (e0,e1,e2 in 4-bit fields, the count of
// leading known elements in the low bits), so a partial tuple list is a small
// sorted array of ints and comparisons stay allocation-free. Unknown fields
// hold the current label floor; since every known label is below the floor,
// packed comparisons agree with the eventual element order wherever the
// partial list determines it.
struct CanonSearch {
    static constexpr int kMaxTriples = 12 * 11 / 3;
    using Keys = std::array<std::uint32_t, kMaxTriples>;

    int v;
    int ntri;
    std::vector<std::array<int, 3>> tri;
    std::vector<int> lab;  // lab[src] = label or -1
    Keys best{};
    bool have_best = false;
    std::vector<int> best_lab;

    CanonSearch(int v_, const std::vector<CyclicTriple>& triples)
        : v(v_), ntri(static_cast<int>(triples.size())), lab(v_, -1) {
        tri.reserve(triples.size());
        for (const auto& t : triples) tri.push_back({t.a(), t.b(), t.c()});
    }

    static std::uint32_t pack(int e0, int e1, int e2, int known) {
        return (static_cast<std::uint32_t>(e0) << 12) | (static_cast<std::uint32_t>(e1) << 8) |
               (static_cast<std::uint32_t>(e2) << 4) | static_cast<std::uint32_t>(known);
    }

    // sorted keys of all triples with at least one labelled point
    int emit(int floor, Keys& out) const {
        int n = 0;
        for (const auto& t : tri) {
            int l0 = lab[t[0]], l1 = lab[t[1]], l2 = lab[t[2]];
            if (l0 < 0 && l1 < 0 && l2 < 0) continue;
            int r = 0, m = v + 1;
            if (l0 >= 0) {
                m = l0;
            }
            if (l1 >= 0 && l1 < m) {
                m = l1;
                r = 1;
            }
            if (l2 >= 0 && l2 < m) {
                m = l2;
                r = 2;
            }
            int a1 = lab[t[(r + 1) % 3]];
            int a2 = lab[t[(r + 2) % 3]];
            if (a1 < 0) {
                out[n++] = pack(m, floor, floor, 1);
            } else if (a2 < 0) {
                out[n++] = pack(m, a1, floor, 2);
            } else {
                out[n++] = pack(m, a1, a2, 3);
            }
        }
        std::sort(out.begin(), out.begin() + n);
        return n;
    }

    // True when the partial list already exceeds the best encoding within the
    // prefix it determines. An unknown field always finalizes to a label >=
    // floor, so when the matching best field sits below the floor the subtree
    // is beaten outright; otherwise the comparison stops as undetermined.
    bool beaten(const Keys& keys, int n, int floor) const {
        if (!have_best) return false;
        std::uint32_t fl = static_cast<std::uint32_t>(floor);
        for (int i = 0; i < n; ++i) {
            std::uint32_t a = keys[i];
            std::uint32_t b = best[i];
            switch (a & 3u) {
                case 3:
                    if (a != b) return a > b;
                    break;
                case 2:
                    if ((a >> 8) != (b >> 8)) return (a >> 8) > (b >> 8);
                    return ((b >> 4) & 0xfu) < fl;
                default:
                    if ((a >> 12) != (b >> 12)) return (a >> 12) > (b >> 12);
                    return ((b >> 8) & 0xfu) < fl;
            }
        }
        return false;
    }

    void dfs(int k) {
        if (k == v) {
            Keys keys;
            emit(k, keys);
            if (!have_best ||
                std::lexicographical_compare(keys.begin(), keys.begin() + ntri, best.begin(),
                                             best.begin() + ntri)) {
                best = keys;
                have_best = true;
                best_lab = lab;
            }
            return;
        }
        // candidates ordered by their partial lists: the first dive lands on
        // (or near) the minimum, making the prefix pruning bite immediately
        std::array<Keys, 12> streams;
        std::array<int, 12> lens{};
        std::array<int, 12> order{};
        int count = 0;
        for (int s = 0; s < v; ++s) {
            if (lab[s] >= 0) continue;
            lab[s] = k;
            lens[count] = emit(k + 1, streams[count]);
            order[count] = (count << 8) | s;
            ++count;
            lab[s] = -1;
        }
        std::sort(order.begin(), order.begin() + count, [&](int x, int y) {
            const auto& sx = streams[x >> 8];
            const auto& sy = streams[y >> 8];
            return std::lexicographical_compare(sx.begin(), sx.begin() + lens[x >> 8], sy.begin(),
                                                sy.begin() + lens[y >> 8]);
        });
        for (int i = 0; i < count; ++i) {
            int idx = order[i] >> 8;
            int s = order[i] & 0xff;
            if (beaten(streams[idx], lens[idx], k + 1)) continue;
            lab[s] = k;
            dfs(k + 1);
            lab[s] = -1;
        }
    }
};

}  // namespace

std::optional<std::vector<Point>> iso_from_succ(int v, const std::vector<int>& sa,
                                                const std::vector<int>& sb) {
    return IsoSearch{v, sa, sb}.run();
}

std::vector<CyclicTriple> canonical_triples(int v, const std::vector<CyclicTriple>& triples,
                                            std::vector<Point>* relabelling) {
    CanonSearch search(v, triples);
    search.dfs(0);
    if (!search.have_best) throw std::logic_error("canonical search found no labelling");
    if (relabelling) relabelling->assign(search.best_lab.begin(), search.best_lab.end());
    std::vector<CyclicTriple> out;
    out.reserve(triples.size());
    for (const auto& t : triples) {
        out.emplace_back(search.best_lab[t.a()], search.best_lab[t.b()], search.best_lab[t.c()]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

namespace {

constexpr int kMaxCanonV = 12;

void require_complete(const TripleSystem& ts, const char* op) {
    if (ts.kind != Kind::complete || !validate(ts).ok) {
        throw std::invalid_argument(std::string(op) + " requires a valid complete system");
    }
}

}  // namespace

TripleSystem CanonicalForm::as_system() const {
    TripleSystem ts;
    ts.v = v;
    ts.kind = Kind::complete;
    ts.triples = triples;
    return ts;
}

bool operator==(const CanonicalForm& lhs, const CanonicalForm& rhs) {
    return lhs.v == rhs.v && lhs.triples == rhs.triples;
}

bool operator<(const CanonicalForm& lhs, const CanonicalForm& rhs) {
    if (lhs.v != rhs.v) return lhs.v < rhs.v;
    return lhs.triples < rhs.triples;
}

CanonicalForm canonical_form(const TripleSystem& ts) {
    if (ts.v > kMaxCanonV) {
        throw std::invalid_argument("v too large for exact canonicalization (v <= 12)");
    }
    require_complete(ts, "canonical_form");
    CanonicalForm form;
    form.v = ts.v;
    form.triples = detail::canonical_triples(ts.v, ts.triples, &form.relabelling);
    return form;
}

std::optional<std::vector<Point>> find_isomorphism(const TripleSystem& a, const TripleSystem& b) {
    if (a.v != b.v) throw std::invalid_argument("order mismatch");
    require_complete(a, "find_isomorphism");
    require_complete(b, "find_isomorphism");
    if (cycle_profile(a) != cycle_profile(b)) return std::nullopt;
    auto sa = detail::succ_from_triples(a.v, a.triples);
    auto sb = detail::succ_from_triples(b.v, b.triples);
    return detail::iso_from_succ(a.v, sa, sb);
}

bool is_isomorphic(const TripleSystem& a, const TripleSystem& b) {
    return find_isomorphism(a, b).has_value();
}

TripleSystem converse(const TripleSystem& ts) {
    TripleSystem out;
    out.v = ts.v;
    out.kind = ts.kind;
    out.triples.reserve(ts.triples.size());
    for (const auto& t : ts.triples) out.triples.emplace_back(t.c(), t.b(), t.a());
    return out;
}

bool is_equivalent(const TripleSystem& a, const TripleSystem& b) {
    return is_isomorphic(a, b) || is_isomorphic(a, converse(b));
}

std::vector<std::vector<int>> cycle_profile(const TripleSystem& ts) {
    require_complete(ts, "cycle_profile");
    auto succ = detail::succ_from_triples(ts.v, ts.triples);
    return detail::profile_from_succ(ts.v, succ);
}

}  // namespace mts
