#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <unordered_set>

#include "oracles.hpp"
#include "rankmod/complete_code.hpp"
#include "rankmod/transitions.hpp"

using namespace rankmod;

TEST_CASE("order 2 golden code") {
    const auto code = materialize_complete(2);
    REQUIRE(code.size() == 2);
    CHECK(code[0] == Permutation::identity(2));
    CHECK(code[1] == *Permutation::parse("2 1"));
    CHECK(complete_transition_at(2, 1) == 2);
    CHECK(complete_transition_at(2, 2) == 2);
}

TEST_CASE("materializations are complete cyclic push-to-the-top codes") {
    for (int n = 2; n <= 7; ++n) {
        const auto code = materialize_complete(n);
        REQUIRE(code.size() == factorial(n));
        std::unordered_set<Permutation, PermutationHash> set(code.begin(), code.end());
        CHECK(set.size() == code.size());  // n! distinct covers all of S_n
        for (size_t i = 0; i < code.size(); ++i) {
            const auto j = push_to_top_step(code[i], code[(i + 1) % code.size()]);
            REQUIRE(j.has_value());
            CHECK(*j >= 2);
        }
    }
}

TEST_CASE("cyclic closure up to order 8 without materializing") {
    for (int n = 2; n <= 8; ++n) {
        CompleteCursor cur(n);
        const uint64_t total = factorial(n);
        for (uint64_t g = 0; g < total; ++g) cur.step();
        CHECK(cur.current_permutation().is_identity());
    }
}

TEST_CASE("cursor transitions match transition_at") {
    for (int n = 2; n <= 6; ++n) {
        CompleteCursor cur(n);
        for (uint64_t g = 1; g <= factorial(n); ++g) {
            const int expect = complete_transition_at(n, g);
            CHECK(cur.step() == expect);
        }
    }
}

TEST_CASE("rank and unrank invert each other exhaustively") {
    for (int n = 1; n <= 6; ++n) {
        const auto code = materialize_complete(n);
        for (uint64_t g = 0; g < code.size(); ++g) {
            CHECK(rank_complete(code[static_cast<size_t>(g)]) == g);
            CHECK(unrank_complete(n, g) == code[static_cast<size_t>(g)]);
        }
    }
}

TEST_CASE("rank anchors") {
    CHECK(rank_complete(Permutation::identity(4)) == 0);
    CHECK(unrank_complete(2, 1) == *Permutation::parse("2 1"));
    CHECK(unrank_complete(3, 0) == Permutation::identity(3));
    CHECK_THROWS_AS(unrank_complete(3, 6), std::out_of_range);
}

TEST_CASE("random roundtrips at order 5") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 100; ++rep) {
        const uint64_t m = rng() % factorial(5);
        CHECK(rank_complete(unrank_complete(5, m)) == m);
    }
}

TEST_CASE("consecutive ranks differ by one push-to-the-top") {
    for (int n : {3, 4, 5}) {
        for (uint64_t m = 0; m < factorial(n); ++m) {
            const Permutation cur = unrank_complete(n, m);
            const Permutation next = unrank_complete(n, (m + 1) % factorial(n));
            const auto j = push_to_top_step(cur, next);
            REQUIRE(j.has_value());
        }
    }
}

TEST_CASE("order bounds") {
    CHECK_THROWS_AS(CompleteCode(0), std::invalid_argument);
    CHECK_THROWS_AS(materialize_complete(10), std::length_error);  // default limit
    CHECK(CompleteCode(5).size() == 120);
}
