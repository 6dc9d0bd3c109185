#include "mts/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "detail.hpp"
#include "mts/isomorphism.hpp"
#include "mts/search.hpp"
#include "parallel.hpp"

namespace mts {

namespace {

constexpr int kMaxEnumV = 10;
constexpr int kFrontierDepth = 5;

// Orderly generation: always cover the lexicographically least uncovered
// directed edge (p,q) with every feasible triple (p,q,z). Each complete
// labelled system corresponds to exactly one path. Candidates z that have not
// appeared in any chosen triple are mutually interchangeable (swapping two of
// them fixes the partial system and every edge chosen so far), so only the
// least unused candidate is expanded; final isomorph rejection happens at the
// leaves.
struct Generator {
    int v;
    unsigned full;
    std::vector<unsigned> uncov;  // uncov[p] bit q: edge (p,q) uncovered
    std::vector<CyclicTriple> cur;
    unsigned used = 0;
    bool prune_unused = true;
    int stop_depth = -1;  // when >= 0, emit partial states at this depth

    std::atomic<long long>* node_counter = nullptr;
    long long node_budget = -1;
    long long local_nodes = 0;

    std::function<void(const std::vector<CyclicTriple>&)> emit;

    explicit Generator(int v_) : v(v_), full((1u << v_) - 1u), uncov(v_) {
        for (int p = 0; p < v; ++p) uncov[p] = full & ~(1u << p);
    }

    void replay(const std::vector<CyclicTriple>& triples) {
        for (const auto& t : triples) apply(t);
    }

    void apply(const CyclicTriple& t) {
        for (auto [p, q] : t.edges()) uncov[p] &= ~(1u << q);
        used |= (1u << t.a()) | (1u << t.b()) | (1u << t.c());
        cur.push_back(t);
    }

    void count_node() {
        if (!node_counter) return;
        if (++local_nodes >= 1024) {
            flush_nodes();
        }
    }

    void flush_nodes() {
        if (!node_counter || local_nodes == 0) return;
        long long total = node_counter->fetch_add(local_nodes) + local_nodes;
        local_nodes = 0;
        if (node_budget >= 0 && total > node_budget) {
            throw std::runtime_error("budget exceeded");
        }
    }

    void rec() {
        count_node();
        if (stop_depth >= 0 && static_cast<int>(cur.size()) == stop_depth) {
            emit(cur);
            return;
        }
        int p = -1, q = -1;
        for (int i = 0; i < v; ++i) {
            if (uncov[i]) {
                p = i;
                q = std::countr_zero(uncov[i]);
                break;
            }
        }
        if (p < 0) {
            emit(cur);
            return;
        }
        bool tried_unused = false;
        for (int z = 0; z < v; ++z) {
            if (z == p || z == q) continue;
            if (!((uncov[q] >> z) & 1u)) continue;
            if (!((uncov[z] >> p) & 1u)) continue;
            bool z_unused = !((used >> z) & 1u);
            if (prune_unused && z_unused) {
                if (tried_unused) continue;
                tried_unused = true;
            }
            auto saved_uncov_p = uncov[p];
            auto saved_uncov_q = uncov[q];
            auto saved_uncov_z = uncov[z];
            auto saved_used = used;
            apply(CyclicTriple(p, q, z));
            rec();
            cur.pop_back();
            uncov[p] = saved_uncov_p;
            uncov[q] = saved_uncov_q;
            uncov[z] = saved_uncov_z;
            used = saved_used;
        }
    }
};

// Class rejection: bucket by the cycle-structure invariant (itself invariant
// under relabelling and reversal), then compare against kept representatives
// with the exact isomorphism search, in both orientations. The converse's
// third-point matrix is the transpose, since (p,q,r) reversed covers (q,p).
// Equivalent to deduplicating orientation-minimal canonical forms, but
// canonicalization runs only once per class when results are finalized.
struct ClassCollector {
    int v;
    struct Rep {
        std::vector<CyclicTriple> triples;
        std::vector<int> succ;
    };
    std::map<std::vector<std::vector<int>>, std::vector<Rep>> buckets;
    long long leaves = 0;

    explicit ClassCollector(int v_) : v(v_) {}

    std::vector<int> transpose(const std::vector<int>& succ) const {
        std::vector<int> out(succ.size(), -1);
        for (int p = 0; p < v; ++p) {
            for (int q = 0; q < v; ++q) {
                if (p != q) out[p * v + q] = succ[q * v + p];
            }
        }
        return out;
    }

    bool same_class(const Rep& rep, const std::vector<int>& succ,
                    const std::vector<int>& succ_conv) const {
        return detail::iso_from_succ(v, rep.succ, succ).has_value() ||
               detail::iso_from_succ(v, rep.succ, succ_conv).has_value();
    }

    // returns true when the system starts a new class
    bool add(const std::vector<CyclicTriple>& triples) {
        ++leaves;
        auto succ = detail::succ_from_triples(v, triples);
        auto prof = detail::profile_from_succ(v, succ);
        auto& reps = buckets[prof];
        auto succ_conv = transpose(succ);
        for (const auto& rep : reps) {
            if (same_class(rep, succ, succ_conv)) return false;
        }
        reps.push_back(Rep{triples, std::move(succ)});
        return true;
    }

    std::vector<TripleSystem> finalize() const {
        std::vector<std::vector<CyclicTriple>> forms;
        for (const auto& [prof, reps] : buckets) {
            for (const auto& rep : reps) {
                auto form = detail::canonical_triples(v, rep.triples, nullptr);
                std::vector<CyclicTriple> reversed;
                reversed.reserve(rep.triples.size());
                for (const auto& t : rep.triples) reversed.emplace_back(t.c(), t.b(), t.a());
                auto conv_form = detail::canonical_triples(v, reversed, nullptr);
                forms.push_back(std::min(form, conv_form));
            }
        }
        std::sort(forms.begin(), forms.end());
        std::vector<TripleSystem> out;
        out.reserve(forms.size());
        for (auto& form : forms) {
            TripleSystem ts;
            ts.v = v;
            ts.kind = Kind::complete;
            ts.triples = std::move(form);
            out.push_back(std::move(ts));
        }
        return out;
    }
};

// One self-contained line per completed subtree: "done <idx> <k>" followed by
// k flattened triple lists. A line that fails to parse in full is ignored, so
// any torn or corrupted record simply means that subtree gets recomputed;
// classes can never be lost silently, because the subtree that first recorded
// a class either keeps its record or is itself recomputed.
struct Checkpoint {
    std::mutex mutex;
    std::ofstream out;
    std::vector<char> done;
    std::vector<std::vector<CyclicTriple>> saved_reps;

    bool load(const std::string& path, int v, int depth, long long frontier_size) {
        done.assign(frontier_size, 0);
        std::ifstream in(path);
        if (!in) return false;
        std::string line;
        if (!std::getline(in, line)) return false;
        std::ostringstream want;
        want << "mtsenum v=" << v << " depth=" << depth << " frontier=" << frontier_size;
        if (line != want.str()) {
            throw std::runtime_error("checkpoint header mismatch: " + line);
        }
        long long triple_count = static_cast<long long>(v) * (v - 1) / 3;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string tag;
            long long idx = -1, k = -1;
            if (!(ls >> tag >> idx >> k) || tag != "done" || idx < 0 || idx >= frontier_size ||
                k < 0) {
                continue;
            }
            std::vector<std::vector<CyclicTriple>> reps;
            bool ok = true;
            try {
                for (long long r = 0; ok && r < k; ++r) {
                    std::vector<CyclicTriple> triples;
                    for (long long t = 0; t < triple_count; ++t) {
                        Point a, b, c;
                        if (!(ls >> a >> b >> c) || a < 0 || a >= v || b < 0 || b >= v || c < 0 ||
                            c >= v) {
                            ok = false;
                            break;
                        }
                        triples.emplace_back(a, b, c);
                    }
                    if (ok) reps.push_back(std::move(triples));
                }
            } catch (const std::invalid_argument&) {
                ok = false;
            }
            Point extra;
            if (!ok || (ls >> extra)) continue;  // torn or trailing junk
            done[idx] = 1;
            for (auto& rep : reps) saved_reps.push_back(std::move(rep));
        }
        return true;
    }

    void open(const std::string& path, int v, int depth, long long frontier_size, bool append) {
        out.open(path, append ? std::ios::app : std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open checkpoint file: " + path);
        if (!append) {
            out << "mtsenum v=" << v << " depth=" << depth << " frontier=" << frontier_size
                << '\n';
            out.flush();
        }
    }

    void record_done(long long idx, const std::vector<std::vector<CyclicTriple>>& new_reps) {
        std::lock_guard<std::mutex> lock(mutex);
        out << "done " << idx << ' ' << new_reps.size();
        for (const auto& rep : new_reps) {
            for (const auto& t : rep) out << ' ' << t.a() << ' ' << t.b() << ' ' << t.c();
        }
        out << '\n';
        out.flush();
    }
};

void guard_enumerable(int v) {
    if (!admissible(v)) {
        throw std::invalid_argument("inadmissible v: " + std::to_string(v));
    }
    if (v < 3) {
        throw std::invalid_argument("enumerate_mts requires v >= 3");
    }
    if (v > kMaxEnumV) {
        throw std::invalid_argument("enumerate_mts supports v <= 10");
    }
}

}  // namespace

bool admissible(int v) {
    if (v < 1) return false;
    return (v % 3 == 0 || v % 3 == 1) && v != 6;
}

std::vector<TripleSystem> enumerate_mts(int v, const EnumerateOptions& opts) {
    guard_enumerable(v);

    std::atomic<long long> nodes{0};
    bool use_frontier = opts.jobs > 1 || !opts.checkpoint_path.empty();

    if (!use_frontier) {
        ClassCollector classes(v);
        Generator gen(v);
        gen.node_counter = &nodes;
        gen.node_budget = opts.node_budget;
        gen.emit = [&](const std::vector<CyclicTriple>& triples) { classes.add(triples); };
        gen.rec();
        gen.flush_nodes();
        return classes.finalize();
    }

    // split the tree at a fixed shallow depth; each frontier entry is an
    // independent unit of work and the checkpoint's unit of progress
    std::vector<std::vector<CyclicTriple>> frontier;
    {
        Generator gen(v);
        gen.stop_depth = kFrontierDepth;
        gen.emit = [&](const std::vector<CyclicTriple>& triples) { frontier.push_back(triples); };
        gen.rec();
    }

    ClassCollector global(v);
    std::mutex global_mutex;
    Checkpoint checkpoint;
    bool checkpointing = !opts.checkpoint_path.empty();
    long long frontier_size = static_cast<long long>(frontier.size());

    if (checkpointing) {
        bool loaded = opts.resume && checkpoint.load(opts.checkpoint_path, v, kFrontierDepth,
                                                     frontier_size);
        if (!loaded) checkpoint.done.assign(frontier_size, 0);
        checkpoint.open(opts.checkpoint_path, v, kFrontierDepth, frontier_size, loaded);
        for (const auto& rep : checkpoint.saved_reps) global.add(rep);
    } else {
        checkpoint.done.assign(frontier_size, 0);
    }

    std::atomic<long long> completed{0};
    for (char d : checkpoint.done) {
        if (d) completed.fetch_add(1);
    }

    detail::run_parallel(opts.jobs, static_cast<int>(frontier.size()), [&](int idx) {
        if (checkpoint.done[idx]) return;
        ClassCollector local(v);
        Generator gen(v);
        gen.node_counter = &nodes;
        gen.node_budget = opts.node_budget;
        gen.replay(frontier[idx]);
        if (static_cast<int>(frontier[idx].size()) < kFrontierDepth) {
            // the whole tree ended before the frontier depth: a complete leaf
            local.add(gen.cur);
        } else {
            gen.emit = [&](const std::vector<CyclicTriple>& triples) { local.add(triples); };
            gen.rec();
        }
        gen.flush_nodes();

        std::vector<std::vector<CyclicTriple>> fresh;
        {
            std::lock_guard<std::mutex> lock(global_mutex);
            for (const auto& [prof, reps] : local.buckets) {
                for (const auto& rep : reps) {
                    if (global.add(rep.triples)) fresh.push_back(rep.triples);
                }
            }
        }
        if (checkpointing) checkpoint.record_done(idx, fresh);
        long long done_now = completed.fetch_add(1) + 1;
        if (opts.progress) opts.progress(done_now, frontier_size);
    });

    return global.finalize();
}

Table1Row classify_all(int v, const EnumerateOptions& eopts, int jobs) {
    auto designs = enumerate_mts(v, eopts);
    Table1Row row;
    row.v = v;
    row.designs = static_cast<long long>(designs.size());
    std::atomic<long long> three{0}, four{0};
    detail::run_parallel(jobs, static_cast<int>(designs.size()), [&](int i) {
        auto [best, witness] = optimal_l(designs[i]);
        if (best >= 3) three.fetch_add(1);
        if (best >= 4) four.fetch_add(1);
    });
    row.three_good = three.load();
    row.four_good = four.load();
    return row;
}

}  // namespace mts
