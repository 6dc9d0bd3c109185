#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mts/enumeration.hpp"
#include "mts/isomorphism.hpp"
#include "mts/search.hpp"
#include "mts/sequencing.hpp"
#include "mts/three_good.hpp"
#include "mts/triple_system.hpp"

namespace {

using namespace mts;

std::string design_id(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::vector<CyclicTriple> parse_base_spec(const std::string& spec) {
    std::vector<CyclicTriple> base;
    std::istringstream groups(spec);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::istringstream gs(group);
        Point a, b, c;
        if (!(gs >> a >> b >> c)) {
            throw std::runtime_error("bad base triple: '" + group + "' (want \"a b c; a b c; ...\")");
        }
        base.emplace_back(a, b, c);
    }
    if (base.empty()) throw std::runtime_error("empty base specification");
    return base;
}

int cmd_validate(const std::string& file) {
    auto ts = read_design(file);
    auto rep = validate(ts);
    if (rep.ok) {
        std::cout << "ok\n";
        return 0;
    }
    for (const auto& violation : rep.violations) std::cout << violation << '\n';
    return 1;
}

int cmd_develop(const std::string& spec, int v, const std::string& out_path) {
    auto ts = develop_mod_v(parse_base_spec(spec), v);
    if (out_path.empty()) {
        std::cout << format_design(ts);
    } else {
        write_design(ts, out_path);
    }
    return 0;
}

int cmd_search(const std::string& file, int ell, const std::string& mode,
               const std::string& convention, int jobs, bool timing) {
    auto ts = read_design(file);
    SearchReport report;
    report.design = design_id(file);
    report.ell = ell;
    SearchStats stats;
    SearchOptions opts{jobs};
    if (mode == "count") {
        auto conv =
            convention == "rotation" ? CountConvention::rotation : CountConvention::linear;
        report.count = count_l_good(ts, ell, conv, opts, &stats);
        report.outcome = Outcome::exhausted;
    } else {
        auto witness = find_l_good(ts, ell, mode == "lex" ? FindMode::lex_least : FindMode::any,
                                   opts, &stats);
        report.outcome = witness ? Outcome::found : Outcome::exhausted;
        report.witness = std::move(witness);
    }
    report.nodes = stats.nodes;
    report.millis = stats.millis;
    std::cout << to_tsv(report, timing) << '\n';
    return 0;
}

int cmd_optimal(const std::string& file, int jobs) {
    auto ts = read_design(file);
    auto [best, witness] = optimal_l(ts, SearchOptions{jobs});
    std::cout << design_id(file) << '\t' << best << '\t' << (witness ? witness->str() : "-")
              << '\n';
    return 0;
}

int cmd_construct(const std::string& file, int pivot, bool all_pivots) {
    auto ts = read_design(file);
    std::vector<Point> pivots;
    if (all_pivots) {
        for (Point p = 0; p < ts.v; ++p) pivots.push_back(p);
    } else {
        pivots.push_back(pivot < 0 ? 0 : pivot);
    }
    for (Point p : pivots) {
        InsertCase used;
        auto seq = three_good_sequencing(ts, p, &used);
        bool good = is_l_good(seq, ts, 3);
        std::cout << "pivot " << p << '\t' << seq.str() << '\t' << to_string(used)
                  << "\t3-good: " << (good ? "yes" : "NO") << '\n';
        if (!good) return 1;
    }
    return 0;
}

int cmd_enumerate(int v, const std::string& outdir, bool include_10, long long budget, int jobs,
                  const std::string& checkpoint, bool resume) {
    if (v == 10 && !include_10) {
        throw std::runtime_error("enumerating v=10 is long-running; pass --include-10");
    }
    EnumerateOptions opts;
    opts.node_budget = budget;
    opts.jobs = jobs;
    opts.checkpoint_path = checkpoint;
    opts.resume = resume;
    if (!checkpoint.empty()) {
        opts.progress = [](long long done, long long total) {
            if (done % 64 == 0 || done == total) {
                std::cerr << "progress: " << done << '/' << total << " subtrees\n";
            }
        };
    }
    auto designs = enumerate_mts(v, opts);
    std::filesystem::create_directories(outdir);
    for (std::size_t i = 0; i < designs.size(); ++i) {
        std::ostringstream name;
        name << "mts" << v << '_' << (i + 1) << ".txt";
        write_design(designs[i], (std::filesystem::path(outdir) / name.str()).string());
    }
    std::cout << designs.size() << " designs written to " << outdir << '\n';
    return 0;
}

int cmd_table1(int max_v, bool include_10, int jobs, const std::string& format,
               const std::string& checkpoint, bool resume, long long budget) {
    bool human = format == "human";
    if (human) {
        std::cout << "   v  designs  3-good  4-good\n";
    }
    max_v = std::min(max_v, 10);  // the census stops where enumeration does
    for (int v = 3; v <= max_v; ++v) {
        if (v % 3 == 2) continue;  // no admissible shape, not even a zero row
        if (v == 10 && !include_10) continue;
        Table1Row row;
        row.v = v;
        if (admissible(v)) {
            EnumerateOptions eopts;
            eopts.jobs = jobs;
            eopts.node_budget = budget;
            if (v == 10) {
                eopts.checkpoint_path = checkpoint;
                eopts.resume = resume;
            }
            row = classify_all(v, eopts, jobs);
        }
        if (human) {
            std::printf("%4d %8lld %7lld %7lld\n", row.v, row.designs, row.three_good,
                        row.four_good);
        } else {
            std::cout << row.v << '\t' << row.designs << '\t' << row.three_good << '\t'
                      << row.four_good << '\n';
        }
    }
    return 0;
}

struct AppendixExpectation {
    const char* file;
    const char* lex_least;  // empty for the v=10 designs
    long long count4;       // -1 when no 4-good sequencing must exist
};

constexpr AppendixExpectation kAppendix[] = {
    {"m9_1_1.txt", "023471856", 18},
    {"m9_3_1.txt", "047563812", 36},
    {"m9_7_1.txt", "031485726", 324},
    {"m10_116_1.txt", "", -1},
    {"m10_116_2.txt", "", -1},
    {"m10_118_1.txt", "", -1},
    {"m10_134_1.txt", "", -1},
    {"m10_134_2.txt", "", -1},
};

int cmd_verify_appendix(const std::string& fixtures, int jobs) {
    namespace fs = std::filesystem;
    int failures = 0;
    auto check = [&failures](bool ok, const std::string& what, const std::string& detail = "") {
        if (ok) {
            std::cout << "ok   " << what << '\n';
        } else {
            ++failures;
            std::cout << "FAIL " << what << (detail.empty() ? "" : ": " + detail) << '\n';
        }
    };
    SearchOptions opts{jobs};

    {
        auto ts = read_design((fs::path(fixtures) / "mts7_cyclic.txt").string());
        check(validate(ts).ok, "mts7_cyclic validates");
        check(find_l_good(ts, 3, FindMode::any, opts).has_value(), "mts7_cyclic has a 3-good sequencing");
    }

    for (const auto& exp : kAppendix) {
        auto path = (fs::path(fixtures) / exp.file).string();
        auto ts = read_design(path);
        auto rep = validate(ts);
        check(rep.ok, std::string(exp.file) + " validates",
              rep.ok ? "" : rep.violations.front());
        if (!rep.ok) continue;

        if (exp.count4 >= 0) {
            auto lex = find_l_good(ts, 4, FindMode::lex_least, opts);
            std::ostringstream what;
            what << exp.file << " lex-least 4-good sequencing is " << exp.lex_least;
            std::string got = lex ? lex->str() : "none";
            check(lex && *lex == Sequencing::parse(exp.lex_least), what.str(), "got " + got);

            long long n = count_l_good(ts, 4, CountConvention::linear, opts);
            std::ostringstream what2;
            what2 << exp.file << " has " << exp.count4 << " 4-good sequencings";
            check(n == exp.count4, what2.str(), "got " + std::to_string(n));
        } else {
            check(!find_l_good(ts, 4, FindMode::any, opts).has_value(),
                  std::string(exp.file) + " has no 4-good sequencing");
            check(find_l_good(ts, 3, FindMode::any, opts).has_value(),
                  std::string(exp.file) + " has a 3-good sequencing");

            auto sweep = partial_removal_sweep(ts, 4, opts);
            long long found = 0;
            for (const auto& r : sweep) {
                if (r.found) ++found;
            }
            std::ostringstream what;
            what << exp.file << " removal sweep: every 29-triple subsystem has a 4-good sequencing";
            check(found == static_cast<long long>(sweep.size()), what.str(),
                  std::to_string(found) + "/" + std::to_string(sweep.size()));
        }
    }

    if (failures) {
        std::cout << failures << " check(s) failed\n";
        return 1;
    }
    std::cout << "all appendix checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mendelsohn triple systems: block-avoiding cyclic sequencings"};
    app.require_subcommand(1);

    std::string file, out_path, spec, mode = "lex", format = "tsv", outdir = ".";
    std::string convention = "linear";
    std::string checkpoint, fixtures;
    int v = 0, ell = 3, jobs = 1, pivot = -1, max_v = 9;
    long long budget = -1;
    bool timing = false, all_pivots = false, include_10 = false, resume = false;

    if (const char* env = std::getenv("MTS_FIXTURE_DIR")) {
        fixtures = env;
    } else {
        fixtures = "fixtures";
    }

    auto* c_validate = app.add_subcommand("validate", "check a design file");
    c_validate->add_option("file", file)->required();

    auto* c_develop = app.add_subcommand("develop", "develop base triples mod v");
    c_develop->add_option("base", spec, "e.g. \"0 1 3; 0 3 2\"")->required();
    c_develop->add_option("v", v)->required();
    c_develop->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* c_search = app.add_subcommand("search", "find or count ell-good sequencings");
    c_search->add_option("file", file)->required();
    c_search->add_option("--l,--ell", ell)->required();
    c_search->add_option("--mode", mode)->check(CLI::IsMember({"find", "lex", "count"}));
    c_search->add_option("--convention", convention, "count convention")
        ->check(CLI::IsMember({"linear", "rotation"}));
    c_search->add_option("--jobs", jobs);
    c_search->add_flag("--timing", timing, "fill the ms column");

    auto* c_count = app.add_subcommand("count", "count ell-good sequencings");
    c_count->add_option("file", file)->required();
    c_count->add_option("--l,--ell", ell)->required();
    c_count->add_option("--convention", convention, "count convention")
        ->check(CLI::IsMember({"linear", "rotation"}));
    c_count->add_option("--jobs", jobs);
    c_count->add_flag("--timing", timing);

    auto* c_optimal = app.add_subcommand("optimal", "largest ell with an ell-good sequencing");
    c_optimal->add_option("file", file)->required();
    c_optimal->add_option("--jobs", jobs);

    auto* c_construct = app.add_subcommand("construct", "build a verified 3-good sequencing");
    c_construct->add_option("file", file)->required();
    c_construct->add_option("--pivot", pivot);
    c_construct->add_flag("--all-pivots", all_pivots);

    auto* c_enumerate = app.add_subcommand("enumerate", "all designs of order v up to isomorphism");
    c_enumerate->add_option("v", v)->required();
    c_enumerate->add_option("--outdir", outdir);
    c_enumerate->add_flag("--include-10", include_10, "allow the long-running v=10 run");
    c_enumerate->add_option("--budget", budget, "abort after this many search nodes");
    c_enumerate->add_option("--jobs", jobs);
    c_enumerate->add_option("--checkpoint", checkpoint, "progress file for interrupt/resume");
    c_enumerate->add_flag("--resume", resume);

    auto* c_table1 = app.add_subcommand("table1", "designs and good sequencings per order");
    c_table1->add_option("--max-v", max_v);
    c_table1->add_flag("--include-10", include_10);
    c_table1->add_option("--jobs", jobs);
    c_table1->add_option("--format", format)->check(CLI::IsMember({"tsv", "human"}));
    c_table1->add_option("--checkpoint", checkpoint);
    c_table1->add_flag("--resume", resume);
    c_table1->add_option("--budget", budget, "abort after this many search nodes");

    auto* c_verify = app.add_subcommand("verify-appendix", "check the shipped reference designs");
    c_verify->add_option("--fixtures", fixtures, "fixture directory");
    c_verify->add_option("--jobs", jobs);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_validate->parsed()) return cmd_validate(file);
        if (c_develop->parsed()) return cmd_develop(spec, v, out_path);
        if (c_search->parsed()) return cmd_search(file, ell, mode, convention, jobs, timing);
        if (c_count->parsed()) return cmd_search(file, ell, "count", convention, jobs, timing);
        if (c_optimal->parsed()) return cmd_optimal(file, jobs);
        if (c_construct->parsed()) return cmd_construct(file, pivot, all_pivots);
        if (c_enumerate->parsed()) {
            return cmd_enumerate(v, outdir, include_10, budget, jobs, checkpoint, resume);
        }
        if (c_table1->parsed()) {
            return cmd_table1(max_v, include_10, jobs, format, checkpoint, resume, budget);
        }
        if (c_verify->parsed()) return cmd_verify_appendix(fixtures, jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
