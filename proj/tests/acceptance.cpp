// Acceptance suite: one line per criterion, nonzero exit on any failure.
// The long-running order-10 classification (AC-2b) is skipped unless
// MTS_ACCEPT_V10=1 is set or --include-10 is passed; the shipped order-10
// designs are covered either way by AC-5 and AC-6.

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mts/enumeration.hpp"
#include "mts/isomorphism.hpp"
#include "mts/search.hpp"
#include "mts/three_good.hpp"
#include "oracles.hpp"

using namespace mts;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::cout << id << (pass ? " PASS" : " FAIL") << ": " << detail << '\n';
    if (!pass) ++g_failures;
}

void skip(const std::string& id, const std::string& detail) {
    std::cout << id << " SKIP: " << detail << '\n';
}

std::string row_str(const Table1Row& r) {
    std::ostringstream os;
    os << '(' << r.designs << ',' << r.three_good << ',' << r.four_good << ')';
    return os.str();
}

const char* kM10Names[] = {"m10_116_1.txt", "m10_116_2.txt", "m10_118_1.txt", "m10_134_1.txt",
                           "m10_134_2.txt"};

}  // namespace

int main(int argc, char** argv) {
    bool include_10 = std::getenv("MTS_ACCEPT_V10") != nullptr;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--include-10") == 0) include_10 = true;
    }
    int jobs = 2;

    // AC-1: the development of (0,1,3),(0,3,2) mod 7 with its natural sequencing
    {
        auto ts = develop_mod_v({CyclicTriple(0, 1, 3), CyclicTriple(0, 3, 2)}, 7);
        auto d = Sequencing::parse("0 1 2 3 4 5 6");
        bool pass = validate(ts).ok && ts.kind == Kind::complete && is_l_good(d, ts, 3) &&
                    !is_l_good(d, ts, 4);
        report("AC-1", pass, "cyclic order-7 design: 0123456 is 3-good and not 4-good");
    }

    // AC-2a: classification rows for v = 3, 4, 7, 9
    std::vector<TripleSystem> nines;
    {
        struct Want {
            int v;
            long long designs, three, four;
        } wants[] = {{3, 1, 0, 0}, {4, 1, 0, 0}, {7, 3, 3, 0}, {9, 18, 18, 3}};
        bool pass = true;
        std::ostringstream detail;
        for (const auto& w : wants) {
            auto row = classify_all(w.v, {}, jobs);
            if (w.v == 9) nines = enumerate_mts(9);
            bool ok = row.designs == w.designs && row.three_good == w.three &&
                      row.four_good == w.four;
            pass = pass && ok;
            detail << "v=" << w.v << ' ' << row_str(row) << (ok ? "" : "<-MISMATCH") << ' ';
        }
        report("AC-2a", pass, detail.str());
    }

    // AC-2b: the order-10 row, long-running and checkpointable
    if (include_10) {
        EnumerateOptions opts;
        opts.jobs = jobs;
        if (const char* ckpt = std::getenv("MTS_V10_CHECKPOINT")) {
            opts.checkpoint_path = ckpt;
            opts.resume = true;
        }
        auto row = classify_all(10, opts, jobs);
        bool pass = row.designs == 143 && row.three_good == 143 && row.four_good == 138;
        report("AC-2b", pass, "v=10 " + row_str(row) + " want (143,143,138)");
    } else {
        skip("AC-2b", "long-running v=10 classification; run with MTS_ACCEPT_V10=1 "
                      "(fallback: AC-5 and AC-6 cover the shipped order-10 designs)");
    }

    // AC-3: order-9 lex-least sequencings and counts, convention pinned by oracle
    {
        struct Want {
            const char* file;
            const char* lex;
            long long expected;
        } wants[] = {{"m9_1_1.txt", "023471856", 18},
                     {"m9_3_1.txt", "047563812", 36},
                     {"m9_7_1.txt", "031485726", 324}};
        bool pass = true;
        std::ostringstream detail;
        for (const auto& w : wants) {
            auto ts = read_design(oracle::fixture(w.file));
            auto lex = find_l_good(ts, 4, FindMode::lex_least, SearchOptions{jobs});
            bool lex_ok = lex && *lex == Sequencing::parse(w.lex);

            long long rot = oracle::count_rotation_scan(ts, 4);   // 8!-scan
            long long lin = oracle::count_linear_scan(ts, 4);     // 9!-scan
            bool rot_matches = rot == w.expected;
            bool lin_matches = lin == w.expected;
            // exactly one convention may reproduce the reference count, and the
            // library default must agree with it
            bool conv_ok = (rot_matches || lin_matches) &&
                           count_l_good(ts, 4, CountConvention::linear) == w.expected &&
                           count_l_good(ts, 4, CountConvention::rotation) == rot;
            pass = pass && lex_ok && conv_ok;
            detail << w.file << " lex=" << (lex_ok ? "ok" : "BAD") << " rot-scan=" << rot
                   << " lin-scan=" << lin << " expected=" << w.expected
                   << " match=" << (lin_matches ? "linear" : (rot_matches ? "rotation" : "NONE"))
                   << "; ";
        }
        report("AC-3", pass, detail.str() + "library default convention: linear");
    }

    // AC-4: no enumerated design beats the bound
    {
        bool pass = true;
        long long checked = 0;
        for (int v : {3, 4, 7, 9}) {
            auto designs = v == 9 ? nines : enumerate_mts(v);
            int probe = std::max(3, bound_l(v) + 1);
            for (const auto& ts : designs) {
                pass = pass && count_l_good(ts, probe, CountConvention::rotation,
                                            SearchOptions{jobs}) == 0;
                ++checked;
            }
        }
        std::ostringstream detail;
        detail << "count of (bound+1)-good sequencings is 0 for all " << checked
               << " enumerated designs (probe clamped to >= 3)";
        report("AC-4", pass, detail.str());
    }

    // AC-5: the five order-10 designs validate, lack 4-good, admit 3-good
    {
        bool pass = true;
        for (const char* name : kM10Names) {
            auto ts = read_design(oracle::fixture(name));
            bool ok = validate(ts).ok &&
                      !find_l_good(ts, 4, FindMode::any, SearchOptions{jobs}).has_value() &&
                      find_l_good(ts, 3, FindMode::any, SearchOptions{jobs}).has_value();
            if (!ok) pass = false;
        }
        report("AC-5", pass, "all five order-10 designs: valid, no 4-good, 3-good exists");
    }

    // AC-6: every 29-triple subsystem of the five designs has a 4-good sequencing
    {
        bool pass = true;
        long long searches = 0;
        for (const char* name : kM10Names) {
            auto ts = read_design(oracle::fixture(name));
            auto sweep = partial_removal_sweep(ts, 4, SearchOptions{jobs});
            searches += static_cast<long long>(sweep.size());
            for (const auto& r : sweep) {
                bool ok = r.found && r.witness &&
                          is_l_good(*r.witness, remove_triple(ts, r.removed), 4);
                if (!ok) pass = false;
            }
        }
        std::ostringstream detail;
        detail << searches << "/150 removals admit a 4-good sequencing";
        report("AC-6", pass, detail.str());
    }

    // AC-7: the constructive algorithm, every design, every pivot
    {
        std::vector<TripleSystem> designs = enumerate_mts(7);
        for (const auto& d : nines) designs.push_back(d);
        for (const char* name :
             {"mts7_cyclic.txt", "m9_1_1.txt", "m9_3_1.txt", "m9_7_1.txt", "m10_116_1.txt",
              "m10_116_2.txt", "m10_118_1.txt", "m10_134_1.txt", "m10_134_2.txt"}) {
            designs.push_back(read_design(oracle::fixture(name)));
        }
        bool pass = true;
        long long runs = 0;
        std::map<InsertCase, long long> used;
        std::string first_error;
        for (const auto& ts : designs) {
            for (Point x = 0; x < ts.v; ++x) {
                ++runs;
                try {
                    InsertCase c;
                    auto d = three_good_sequencing(ts, x, &c);
                    ++used[c];
                    if (!oracle::is_l_good_scan(d, ts, 3)) {
                        pass = false;
                        if (first_error.empty()) first_error = "oracle rejects output";
                    }
                } catch (const std::exception& e) {
                    pass = false;
                    if (first_error.empty()) first_error = e.what();
                }
            }
        }
        // the per-case window checks assert inside each construction; all four
        // named constructions must be exercised (the patch-search fallback
        // additionally covers the two order-7 shapes without admissible y,z)
        bool all_cases = used[InsertCase::long_cycle] > 0 && used[InsertCase::two_long] > 0 &&
                         used[InsertCase::two_2cycles] > 0 &&
                         used[InsertCase::two_plus_rest] > 0;
        std::ostringstream detail;
        detail << runs << " pivot runs, case coverage:";
        for (const auto& [c, n] : used) detail << ' ' << to_string(c) << '=' << n;
        if (!first_error.empty()) detail << "; first error: " << first_error;
        report("AC-7", pass && all_cases, detail.str());
    }

    // AC-8: pruned search equals full enumeration
    {
        bool pass = true;
        std::ostringstream detail;
        for (const auto& ts : enumerate_mts(7)) {
            for (int ell : {3, 4}) {
                long long pruned = count_l_good(ts, ell, CountConvention::rotation);
                long long naive = oracle::count_rotation_scan(ts, ell);
                if (pruned != naive) pass = false;
            }
        }
        detail << "all order-7 designs at ell=3,4";
        auto m9 = read_design(oracle::fixture("m9_1_1.txt"));
        for (int ell : {3, 4}) {
            long long pruned = count_l_good(m9, ell, CountConvention::rotation);
            long long naive = oracle::count_rotation_scan(m9, ell);
            if (pruned != naive) pass = false;
            detail << "; m9_1_1 ell=" << ell << ": " << pruned << "==" << naive;
        }
        report("AC-8", pass, detail.str());
    }

    if (g_failures) {
        std::cout << g_failures << " criterion(s) FAILED\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
