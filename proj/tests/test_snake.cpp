#include <catch2/catch_amalgamated.hpp>

#include <unordered_set>

#include "oracles.hpp"
#include "rankmod/kendall_snake.hpp"

using namespace rankmod;

namespace {
Permutation P(const char* s) { return *Permutation::parse(s); }
}

TEST_CASE("order-5 block for the even snake") {
    const auto block = search_hsnake_block(2);
    REQUIRE(block.has_value());
    CHECK(block->codewords.size() == 57);  // (2m+1)!/2 - (2m-1)
    for (const auto& p : block->codewords) CHECK(is_even(p));
    for (int t : block->transitions) CHECK((t == 3 || t == 5));
    bool u3 = false, u5 = false;
    for (int t : block->transitions) {
        u3 = u3 || t == 3;
        u5 = u5 || t == 5;
    }
    CHECK((u3 && u5));

    // the complement inside A_5 is exactly one t_{^3}-orbit
    std::unordered_set<Permutation, PermutationHash> set(block->codewords.begin(),
                                                         block->codewords.end());
    std::vector<Permutation> missing;
    for (const auto& p : oracle::all_permutations(5))
        if (is_even(p) && !set.count(p)) missing.push_back(p);
    REQUIRE(missing.size() == 3);
    std::unordered_set<Permutation, PermutationHash> orbit;
    Permutation o = block->excluded_rep;
    for (int q = 0; q < 3; ++q) {
        orbit.insert(o);
        o = push_to_top(o, 3);
    }
    for (const auto& p : missing) CHECK(orbit.count(p) == 1);

    // a parity-preserving Gray code is itself spread-2
    CHECK(verify_snake(block->codewords).pass);
    CHECK(verify_snake_naive(block->codewords).pass);
}

TEST_CASE("translated blocks have the announced structure") {
    const auto block = search_hsnake_block(2);
    REQUIRE(block.has_value());
    const PhiFrame frame(2);
    for (int r = 0; r < 4; ++r) {
        const auto seq = build_phat(2, r, *block);
        REQUIRE(seq.size() == 57);
        CHECK(seq.front() == frame.pi_hat[static_cast<size_t>(r)]);
        const int expect_last = (r == 0) ? 6 : 5 - r;  // 2m+2 or 2m+1-r at m=2
        for (const auto& p : seq) CHECK(p(6) == expect_last);
        // sigma_tilde_r is excluded
        const Permutation st = frame.sigma_tilde(r);
        CHECK(is_even(st));
        for (const auto& p : seq) CHECK_FALSE(p == st);
    }
}

TEST_CASE("snake at m=2") {
    const SnakeCode snake = build_snake(2);
    CHECK(snake.order == 6);
    REQUIRE(snake.size() == 232);
    // closed form (2m/(2m+2)) (2m+2)!/2 - (2m-2) 2m at m=2
    CHECK(snake.size() == (4 * (factorial(6) / 2)) / 6 - 2 * 4);

    int odd = 0;
    for (const auto& p : snake.codewords)
        if (sign(p) == Parity::odd) ++odd;
    CHECK(odd == 4);  // the bridges and nothing else

    const SnakeReport rep = verify_snake(snake.codewords);
    CHECK(rep.pass);
    CHECK(rep.size == 232);

    // rate at desk scale
    CHECK(std::abs(double(snake.size()) / 720.0 - 0.3222) < 5e-4);
}

TEST_CASE("snake construction is deterministic") {
    const SnakeCode a = build_snake(2);
    const SnakeCode b = build_snake(2);
    CHECK(a.codewords == b.codewords);
    CHECK(a.transitions == b.transitions);
}

TEST_CASE("verifiers agree and catch planted collisions") {
    std::vector<Permutation> bad{P("1 2 3 4 5 6"), P("2 1 3 4 5 6")};
    const SnakeReport fast = verify_snake(bad);
    const SnakeReport slow = verify_snake_naive(bad);
    CHECK_FALSE(fast.pass);
    CHECK_FALSE(slow.pass);
    REQUIRE(fast.witness_index.has_value());
    REQUIRE(slow.witness_index.has_value());
    CHECK(*fast.witness_index == 1);
    CHECK(*slow.witness_index == 1);

    const SnakeCode snake = build_snake(2);
    CHECK(verify_snake(snake.codewords).pass == verify_snake_naive(snake.codewords).pass);
}
