#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include "oracles.hpp"
#include "rankmod/aux_code.hpp"
#include "rankmod/code_io.hpp"
#include "rankmod/phi_frame.hpp"

using namespace rankmod;

namespace {
Permutation P(const char* s) { return *Permutation::parse(s); }
}

TEST_CASE("flip order 4 golden sequence") {
    const AuxCode c = AuxCode::flip(4);
    const std::vector<const char*> golden = {"1 2 3 4", "4 1 2 3", "2 4 1 3", "3 2 4 1",
                                             "1 3 2 4", "4 1 3 2", "3 4 1 2", "2 3 4 1"};
    REQUIRE(c.size() == 8);
    for (size_t i = 0; i < golden.size(); ++i) CHECK(c.codewords[i] == P(golden[i]));
    CHECK(c.transitions.front() == 4);
    CHECK(verify_aux(c).pass);
    CHECK(oracle::aux_property_holds(c.codewords, 4));
}

TEST_CASE("flip sizes and membership rule") {
    const AuxCode c6 = AuxCode::flip(6);
    CHECK(c6.size() == 144);  // 6!/5
    CHECK(verify_aux(c6).pass);
    for (int k : {4, 6}) {
        const AuxCode c = AuxCode::flip(k);
        std::unordered_set<Permutation, PermutationHash> set(c.codewords.begin(),
                                                             c.codewords.end());
        for (const auto& p : oracle::all_permutations(k))
            CHECK(c.contains(p) == (set.count(p) > 0));
    }
}

TEST_CASE("trivial order-3 code") {
    const AuxCode c = AuxCode::trivial3();
    REQUIRE(c.size() == 3);
    CHECK(c.codewords[0] == Permutation::identity(3));
    CHECK(c.codewords[1] == P("3 1 2"));
    CHECK(c.codewords[2] == P("2 3 1"));
    CHECK(verify_aux(c).pass);
    CHECK(c.parity_preserving);
}

TEST_CASE("order-5 search finds the optimum and proves it") {
    SearchConstraints cs;
    cs.must_use = {3};
    const SearchOutcome found = search_parity_preserving(5, 57, cs);
    REQUIRE(found.found);
    CHECK(found.codewords.size() == 57);
    CHECK(found.transitions.front() == 5);
    bool uses3 = false;
    for (int t : found.transitions) uses3 = uses3 || t == 3;
    CHECK(uses3);
    for (const auto& p : found.codewords) CHECK(is_even(p));
    CHECK(oracle::aux_property_holds(found.codewords, 5));

    // 57 is the maximum: the exhaustive search for 58 comes back empty without
    // hitting the budget
    const SearchOutcome none = search_parity_preserving(5, 58, {});
    CHECK_FALSE(none.found);
    CHECK_FALSE(none.budget_exhausted);
}

TEST_CASE("search is deterministic") {
    SearchConstraints cs;
    cs.must_use = {3};
    const SearchOutcome a = search_parity_preserving(5, 57, cs);
    const SearchOutcome b = search_parity_preserving(5, 57, cs);
    REQUIRE(a.found);
    REQUIRE(b.found);
    CHECK(a.transitions == b.transitions);
}

TEST_CASE("phi frame at m=2") {
    const PhiFrame f(2);
    CHECK(f.pi_hat[0] == Permutation::identity(6));
    CHECK(f.pi_hat[1] == P("5 6 2 3 1 4"));
    // phi^4(id) = id: apply phi once more to the last frame element
    CHECK(f.apply_phi(f.pi_hat[3]) == Permutation::identity(6));
    for (const auto& b : f.bridges) {
        CHECK(sign(b) == Parity::odd);
        CHECK((b(6) == 1 || b(6) == 5));
    }
}

TEST_CASE("stitched order 6") {
    AuxCatalog catalog;
    const auto c = catalog.get(6, false);
    REQUIRE(c->size() == 178);
    CHECK(verify_aux(*c).pass);
    CHECK(c->transitions.front() == 6);

    // the bridges are the only odd codewords
    int odd = 0;
    for (const auto& p : c->codewords)
        if (sign(p) == Parity::odd) ++odd;
    CHECK(odd == 4);  // 2m with m = 2

    // block structure: constant last element per segment, segments disjoint
    std::map<int, int> by_last;
    for (const auto& p : c->codewords)
        if (is_even(p)) by_last[p(6)]++;
    CHECK(by_last[6] == 3);  // translated P_0'
    CHECK(by_last[4] == 57);
    CHECK(by_last[2] == 57);
    CHECK(by_last[1] == 57);

    // structured membership agrees with the materialized set over all of S_6
    std::unordered_set<Permutation, PermutationHash> set(c->codewords.begin(),
                                                         c->codewords.end());
    for (const auto& p : oracle::all_permutations(6))
        CHECK(c->contains(p) == (set.count(p) > 0));
}

TEST_CASE("stitched size formula above order 6") {
    // (k-3)((k-1)!/2 + 2) + 1 at k = 8, reachable only with an order-7 block
    const uint64_t expected = 5 * (factorial(7) / 2 + 2) + 1;
    CHECK(expected == 12611);
    AuxCatalog catalog;
    CHECK_THROWS_AS(catalog.get(7, false), UnsupportedAuxOrder);
}

TEST_CASE("catalog dispatch sizes") {
    AuxCatalog catalog;
    CHECK(catalog.size_of(4, false) == 8);
    CHECK(catalog.size_of(4, true) == 8);
    CHECK(catalog.size_of(5, false) == 57);
    CHECK(catalog.size_of(5, true) == 57);
    CHECK(catalog.size_of(6, false) == 178);
    CHECK(catalog.size_of(6, true) == 144);
    CHECK(catalog.size_of(3, false) == 3);
    CHECK(catalog.size_of(8, true) == factorial(8) / 7);  // flip fallback
}

TEST_CASE("verify_aux rejects a planted violation") {
    AuxCode bad = AuxCode::trivial3();
    bad.codewords[1] = swap_values(bad.codewords[0], 1, 3);  // (1,3) o id
    const AuxReport rep = verify_aux(bad);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("every catalog family passes verification") {
    AuxCatalog catalog;
    for (auto [order, rankable] : std::vector<std::pair<int, bool>>{
             {3, false}, {4, false}, {5, false}, {6, false}, {6, true}, {8, true}})
        CHECK(verify_aux(*catalog.get(order, rankable)).pass);
}

TEST_CASE("certificate files round-trip and are validated") {
    AuxCatalog catalog;
    const auto s5 = catalog.get(5, false);
    std::stringstream buf;
    write_certificate(buf, *s5);
    const AuxCode back = read_certificate(buf);
    CHECK(back.size() == s5->size());
    CHECK(back.codewords == s5->codewords);

    // tampering breaks validation
    std::stringstream bad;
    bad << "# aux k=5 M=3 family=searched\n5\n3\n3\n";
    CHECK_THROWS(read_certificate(bad));
}

TEST_CASE("P0' avoids the bridge images") {
    // the short amended segment never contains (beta_r(2m+2), 2m+2) o beta_r
    const PhiFrame f(2);
    std::vector<Permutation> p0{f.pi_hat[0], push_to_top(f.pi_hat[0], 3),
                                push_to_top(push_to_top(f.pi_hat[0], 3), 3)};
    std::unordered_set<Permutation, PermutationHash> p0set(p0.begin(), p0.end());
    for (const auto& b : f.bridges) {
        const Permutation image = swap_values(b, b(6), 6);
        CHECK(p0set.count(image) == 0);
    }
}
