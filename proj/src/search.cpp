#include "mts/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "detail.hpp"
#include "parallel.hpp"

namespace mts {

namespace {

constexpr int kMaxSearchV = 31;  // positions tracked in a 32-bit mask

void require_searchable(const TripleSystem& ts) {
    auto rep = validate(ts);
    if (!rep.ok) {
        throw std::invalid_argument("search requires a valid system; first violation: " +
                                    rep.violations.front());
    }
    if (ts.v > kMaxSearchV) {
        throw std::invalid_argument("search supports v <= 31");
    }
}

// Left-to-right fill with position 0 pinned to point 0 and candidates tried in
// increasing order, so accepted leaves appear in lexicographic order. A
// candidate at position i is rejected when it closes a system triple whose
// points sit inside an ell-window wholly contained in the placed prefix; the
// windows across the seam are covered by the full check at each leaf.
struct Kernel {
    int v;
    int leff;
    int ell;
    const TripleSystem& ts;
    const std::vector<int>& third;
    bool counting;

    std::vector<Point> seq;
    unsigned used = 0;
    long long nodes = 0;
    long long count = 0;
    bool done = false;
    std::optional<Sequencing> witness;
    const std::atomic<int>* cancel_below = nullptr;  // parallel find: task cutoff
    int task_index = 0;

    Kernel(const TripleSystem& system, const std::vector<int>& third_points, int ell_, bool counting_)
        : v(system.v),
          leff(std::min(ell_, system.v)),
          ell(ell_),
          ts(system),
          third(third_points),
          counting(counting_),
          seq(system.v, -1) {
        seq[0] = 0;
        used = 1u;
    }

    void dfs(int i) {
        if (done) return;
        if (cancel_below && cancel_below->load(std::memory_order_relaxed) < task_index) {
            done = true;
            return;
        }
        if (i == v) {
            Sequencing d(seq);
            if (is_l_good(d, ts, ell)) {
                if (counting) {
                    ++count;
                } else {
                    witness = std::move(d);
                    done = true;
                }
            }
            return;
        }
        unsigned forb = 0;
        int lo = std::max(0, i - leff + 1);
        for (int j = lo; j + 1 < i; ++j) {
            for (int k = j + 1; k < i; ++k) {
                int w = third[seq[j] * v + seq[k]];
                if (w >= 0) forb |= 1u << w;
            }
        }
        for (Point p = 0; p < v; ++p) {
            unsigned bit = 1u << p;
            if ((used & bit) || (forb & bit)) continue;
            ++nodes;
            seq[i] = p;
            used |= bit;
            dfs(i + 1);
            used &= ~bit;
            if (done) return;
        }
    }
};

struct RunResult {
    long long count = 0;
    std::optional<Sequencing> witness;
    long long nodes = 0;
};

RunResult run_search(const TripleSystem& ts, int ell, bool counting, const SearchOptions& opts) {
    auto third = detail::succ_from_triples(ts.v, ts.triples);
    int v = ts.v;

    if (opts.jobs <= 1) {
        Kernel kernel(ts, third, ell, counting);
        kernel.dfs(1);
        return {kernel.count, std::move(kernel.witness), kernel.nodes};
    }

    // one task per choice of the point at position 1
    std::vector<Point> firsts;
    for (Point p = 1; p < v; ++p) firsts.push_back(p);

    std::atomic<int> best_task{static_cast<int>(firsts.size())};
    std::vector<RunResult> results(firsts.size());
    detail::run_parallel(opts.jobs, static_cast<int>(firsts.size()), [&](int idx) {
        if (!counting && best_task.load() < idx) return;
        Kernel kernel(ts, third, ell, counting);
        kernel.task_index = idx;
        if (!counting) kernel.cancel_below = &best_task;
        kernel.seq[1] = firsts[idx];
        kernel.used |= 1u << firsts[idx];
        ++kernel.nodes;
        kernel.dfs(2);
        results[idx].count = kernel.count;
        results[idx].nodes = kernel.nodes;
        if (kernel.witness) {
            results[idx].witness = std::move(kernel.witness);
            int cur = best_task.load();
            while (idx < cur && !best_task.compare_exchange_weak(cur, idx)) {
            }
        }
    });

    RunResult merged;
    for (const auto& r : results) {
        merged.count += r.count;
        merged.nodes += r.nodes;
        if (r.witness && (!merged.witness || r.witness->order() < merged.witness->order())) {
            merged.witness = r.witness;
        }
    }
    return merged;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

std::optional<Sequencing> find_l_good(const TripleSystem& ts, int ell, FindMode,
                                      const SearchOptions& opts, SearchStats* stats) {
    if (ell < 3) throw std::invalid_argument("ell must be >= 3");
    require_searchable(ts);
    auto start = std::chrono::steady_clock::now();
    auto result = run_search(ts, ell, /*counting=*/false, opts);
    if (stats) {
        stats->nodes = result.nodes;
        stats->millis = elapsed_ms(start);
    }
    return result.witness;
}

long long count_l_good(const TripleSystem& ts, int ell, CountConvention convention,
                       const SearchOptions& opts, SearchStats* stats) {
    if (ell < 3) throw std::invalid_argument("ell must be >= 3");
    require_searchable(ts);
    auto start = std::chrono::steady_clock::now();
    auto result = run_search(ts, ell, /*counting=*/true, opts);
    if (stats) {
        stats->nodes = result.nodes;
        stats->millis = elapsed_ms(start);
    }
    // the kernel pins the first position, so it counts cyclic classes
    return convention == CountConvention::linear ? result.count * ts.v : result.count;
}

std::pair<int, std::optional<Sequencing>> optimal_l(const TripleSystem& ts,
                                                    const SearchOptions& opts) {
    require_searchable(ts);
    int cap = ts.kind == Kind::complete ? bound_l(ts.v) : ts.v;
    int best = 2;
    std::optional<Sequencing> witness;
    for (int ell = 3; ell <= cap; ++ell) {
        auto found = find_l_good(ts, ell, FindMode::any, opts);
        if (!found) break;
        best = ell;
        witness = std::move(found);
    }
    return {best, std::move(witness)};
}

bool verify_bound_exhaustive(const TripleSystem& ts, const SearchOptions& opts) {
    if (ts.kind != Kind::complete) {
        throw std::invalid_argument("verify_bound_exhaustive requires a complete system");
    }
    int probe = std::max(3, bound_l(ts.v) + 1);
    return count_l_good(ts, probe, CountConvention::rotation, opts) == 0;
}

std::vector<RemovalOutcome> partial_removal_sweep(const TripleSystem& ts, int ell,
                                                  const SearchOptions& opts) {
    if (ell < 3) throw std::invalid_argument("ell must be >= 3");
    if (ts.kind != Kind::complete) {
        throw std::invalid_argument("partial_removal_sweep requires a complete system");
    }
    require_searchable(ts);
    std::vector<std::optional<RemovalOutcome>> slots(ts.triples.size());
    detail::run_parallel(opts.jobs, static_cast<int>(ts.triples.size()), [&](int i) {
        const auto& t = ts.triples[i];
        auto reduced = remove_triple(ts, t);
        auto witness = find_l_good(reduced, ell, FindMode::any);
        slots[i] = RemovalOutcome{t, witness.has_value(), std::move(witness)};
    });
    std::vector<RemovalOutcome> out;
    out.reserve(slots.size());
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

std::string to_tsv(const SearchReport& report, bool include_timing) {
    std::ostringstream os;
    os << report.design << '\t' << report.ell << '\t'
       << (report.outcome == Outcome::found ? "found" : "exhausted") << '\t';
    if (report.count >= 0) {
        os << report.count;
    } else {
        os << '-';
    }
    os << '\t' << (report.witness ? report.witness->str() : "-") << '\t' << report.nodes << '\t';
    if (include_timing) {
        os << static_cast<long long>(report.millis + 0.5);
    } else {
        os << '-';
    }
    return os.str();
}

}  // namespace mts
