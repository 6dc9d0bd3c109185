#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mts/enumeration.hpp"
#include "mts/isomorphism.hpp"
#include "oracles.hpp"

using namespace mts;

namespace {

TripleSystem example_mts7() {
    return develop_mod_v({CyclicTriple(0, 1, 3), CyclicTriple(0, 3, 2)}, 7);
}

TripleSystem relabelled(const TripleSystem& ts, const std::vector<int>& perm) {
    TripleSystem out;
    out.v = ts.v;
    out.kind = ts.kind;
    for (const auto& t : ts.triples) {
        out.triples.emplace_back(perm[t.a()], perm[t.b()], perm[t.c()]);
    }
    return out;
}

std::vector<int> random_perm(int v, std::mt19937& rng) {
    std::vector<int> p(v);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST_CASE("canonicalization is idempotent") {
    for (const char* name : {"mts7_cyclic.txt", "m9_1_1.txt"}) {
        auto form = canonical_form(read_design(oracle::fixture(name)));
        auto again = canonical_form(form.as_system());
        CHECK(form == again);
        // and the certifying permutation of a canonical form is the identity
        for (int i = 0; i < form.v; ++i) CHECK(again.relabelling[i] == i);
    }
}

TEST_CASE("canonical form equals the all-permutations minimum") {
    std::mt19937 rng(42);
    std::vector<TripleSystem> systems;
    for (int v : {3, 4, 7}) {
        for (auto& d : enumerate_mts(v)) systems.push_back(d);
    }
    systems.push_back(example_mts7());
    for (const auto& ts : systems) {
        CAPTURE(ts.v);
        CHECK(canonical_form(ts).triples == oracle::canonical_scan(ts));
        auto image = relabelled(ts, random_perm(ts.v, rng));
        CHECK(canonical_form(image).triples == oracle::canonical_scan(ts));
    }
}

TEST_CASE("the multiplier relabelling of the cyclic order-7 design is isomorphic") {
    auto ts = example_mts7();
    std::vector<int> times3(7);
    for (int i = 0; i < 7; ++i) times3[i] = (3 * i) % 7;
    auto image = relabelled(ts, times3);
    CHECK(canonical_form(ts) == canonical_form(image));
    CHECK(is_isomorphic(ts, image));
    CHECK(oracle::isomorphic_scan(ts, image));
}

TEST_CASE("certifying permutation maps the system onto its canonical form") {
    std::mt19937 rng(5);
    auto ts = read_design(oracle::fixture("m9_3_1.txt"));
    auto image = relabelled(ts, random_perm(ts.v, rng));
    auto form = canonical_form(image);
    CHECK(relabelled(image, form.relabelling) == form.as_system());
}

TEST_CASE("canonical forms are relabelling invariant at larger orders") {
    // no all-permutations oracle at these sizes, but invariance is checkable
    std::mt19937 rng(17);
    for (const char* name : {"m9_7_1.txt", "m10_116_1.txt", "m10_134_2.txt"}) {
        auto ts = read_design(oracle::fixture(name));
        auto form = canonical_form(ts);
        CAPTURE(name);
        for (int trial = 0; trial < 5; ++trial) {
            CHECK(canonical_form(relabelled(ts, random_perm(ts.v, rng))) == form);
        }
        CHECK(canonical_form(form.as_system()) == form);
    }
}

TEST_CASE("the order-10 reference designs are pairwise nonisomorphic") {
    std::vector<TripleSystem> designs;
    for (const char* name : {"m10_116_1.txt", "m10_116_2.txt", "m10_118_1.txt", "m10_134_1.txt",
                             "m10_134_2.txt"}) {
        designs.push_back(read_design(oracle::fixture(name)));
    }
    for (std::size_t i = 0; i < designs.size(); ++i) {
        for (std::size_t j = i + 1; j < designs.size(); ++j) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(!is_isomorphic(designs[i], designs[j]));
            CHECK(!(canonical_form(designs[i]) == canonical_form(designs[j])));
            // stronger: they are five distinct classes even identifying reversal
            CHECK(!is_equivalent(designs[i], designs[j]));
        }
    }
}

TEST_CASE("isomorphism testing agrees with the naive oracle") {
    std::mt19937 rng(7);
    auto sevens = enumerate_mts(7);
    REQUIRE(sevens.size() >= 2);
    for (const auto& a : sevens) {
        CHECK(is_isomorphic(a, a));
        auto image = relabelled(a, random_perm(a.v, rng));
        CHECK(is_isomorphic(a, image));
        CHECK(oracle::isomorphic_scan(a, image));
        for (const auto& b : sevens) {
            CHECK(is_isomorphic(a, b) == oracle::isomorphic_scan(a, b));
            CHECK(is_isomorphic(a, b) == (canonical_form(a) == canonical_form(b)));
        }
    }
}

TEST_CASE("isomorphism is an equivalence relation on relabellings") {
    std::mt19937 rng(11);
    auto base = read_design(oracle::fixture("m9_7_1.txt"));
    auto a = relabelled(base, random_perm(base.v, rng));
    auto b = relabelled(base, random_perm(base.v, rng));
    CHECK(is_isomorphic(a, a));
    CHECK(is_isomorphic(a, b));
    CHECK(is_isomorphic(b, a));
    CHECK(is_isomorphic(base, b));
}

TEST_CASE("order mismatch is an error") {
    CHECK_THROWS_AS(is_isomorphic(example_mts7(), read_design(oracle::fixture("m9_1_1.txt"))),
                    std::invalid_argument);
}

TEST_CASE("canonicalization is guarded against large orders") {
    TripleSystem big;
    big.v = 13;
    big.kind = Kind::complete;
    CHECK_THROWS_WITH_AS(canonical_form(big), doctest::Contains("too large"),
                         std::invalid_argument);
}

TEST_CASE("incomplete systems are rejected") {
    auto partial = develop_mod_v({}, 7);
    CHECK_THROWS_AS(canonical_form(partial), std::invalid_argument);
}

TEST_CASE("converse reverses every triple and preserves validity") {
    auto ts = read_design(oracle::fixture("m9_1_1.txt"));
    auto conv = converse(ts);
    CHECK(validate(conv).ok);
    CHECK(conv.contains(CyclicTriple(1, 2, 0)));   // reverse of (0,2,1)
    CHECK(!conv.contains(CyclicTriple(0, 2, 1)));  // its preimage (0,1,2) is absent
    CHECK(converse(conv) == ts);
}

TEST_CASE("chiral and self-converse designs") {
    // the cyclic order-7 design is not self-converse, but it is equivalent to
    // its converse by definition of the extended relation
    auto ts = example_mts7();
    auto conv = converse(ts);
    CHECK(is_equivalent(ts, conv));
    CHECK(is_equivalent(ts, ts));
    // the doubled Fano design is self-converse outright
    auto sevens = enumerate_mts(7);
    bool found_self_converse = false;
    for (const auto& d : sevens) {
        if (is_isomorphic(d, converse(d))) found_self_converse = true;
    }
    CHECK(found_self_converse);
}

TEST_CASE("cycle profiles are invariant under relabelling and reversal") {
    std::mt19937 rng(3);
    auto ts = read_design(oracle::fixture("m10_118_1.txt"));
    auto profile = cycle_profile(ts);
    CHECK(cycle_profile(relabelled(ts, random_perm(ts.v, rng))) == profile);
    CHECK(cycle_profile(converse(ts)) == profile);
    // and they do distinguish designs that differ structurally
    auto sevens = enumerate_mts(7);
    CHECK(cycle_profile(sevens[0]) != cycle_profile(sevens[1]));
}
