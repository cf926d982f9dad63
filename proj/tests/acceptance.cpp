// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.  Exit status is the number of
// failed criteria.  argv[1] must point at the CLI binary.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "rankmod/aux_code.hpp"
#include "rankmod/channel.hpp"
#include "rankmod/code_io.hpp"
#include "rankmod/complete_code.hpp"
#include "rankmod/decoder.hpp"
#include "rankmod/kendall_snake.hpp"
#include "rankmod/lmrm_code.hpp"
#include "rankmod/ranking.hpp"
#include "rankmod/rate_bounds.hpp"

using namespace rankmod;

namespace {

std::string g_cli;

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    CliResult res;
    const std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

Permutation P(const std::string& s) { return *Permutation::parse(s); }

bool check(bool cond, std::string& why, const std::string& msg) {
    if (!cond && why.empty()) why = msg;
    return cond;
}

// ---- criterion bodies -------------------------------------------------------

bool golden_aux4(std::string& why) {
    const std::string expected =
        "# aux k=4 M=8 family=flip\n"
        "1 2 3 4\n4 1 2 3\n2 4 1 3\n3 2 4 1\n1 3 2 4\n4 1 3 2\n3 4 1 2\n2 3 4 1\n";
    const CliResult r = run_cli("aux --order 4");
    bool ok = check(r.exit_code == 0, why, "aux --order 4 exited nonzero");
    ok &= check(r.out == expected, why, "aux --order 4 output differs from the golden bytes");
    const AuxCode flip4 = AuxCode::flip(4);
    ok &= check(verify_aux(flip4).pass, why, "verify_aux(flip 4) failed");
    return ok;
}

bool golden_main_code(std::string& why) {
    const std::vector<std::string> golden = {
        "4 1 5 2 6 3", "3 4 1 5 2 6", "1 3 4 5 2 6", "4 1 3 5 2 6", "2 4 1 3 5 6",
        "1 2 4 3 5 6", "4 1 2 3 5 6", "5 4 1 2 3 6", "1 5 4 2 3 6", "4 1 5 2 3 6",
        "6 4 1 5 2 3", "1 6 4 5 2 3", "4 1 6 5 2 3", "2 4 1 6 5 3", "1 2 4 6 5 3",
        "4 1 2 6 5 3", "5 4 1 2 6 3", "1 5 4 2 6 3"};
    std::string expected = "# lmrm n=6 d=3 M=18\n";
    for (const auto& line : golden) expected += line + "\n";
    const CliResult r = run_cli("construct -n 6 -d 3");
    bool ok = check(r.exit_code == 0, why, "construct -n 6 -d 3 exited nonzero");
    ok &= check(r.out == expected, why, "construct -n 6 -d 3 output differs from the golden bytes");

    AuxCatalog catalog;
    const auto mat = construct({6, 3}, catalog).materialize();
    ok &= check(min_pairwise_linf(mat) == 3, why, "minimum pairwise distance is not exactly 3");
    ok &= check(verify_materialized(mat, 3, true).pass, why, "cyclic Gray verification failed");
    return ok;
}

bool size_formula_grid(std::string& why) {
    AuxCatalog catalog;
    bool ok = true;
    int checked = 0;
    for (int n = 3; n <= 12; ++n)
        for (int d = 2; d < n; ++d) {
            uint64_t expected;
            try {
                expected = size_formula({n, d}, catalog);
            } catch (const UnsupportedAuxOrder&) {
                std::cerr << "  note: (n=" << n << ", d=" << d
                          << ") skipped: odd aux order >= 7 needs a certificate\n";
                continue;
            }
            if (expected > 1000000) continue;
            const LmrmCode code = construct({n, d}, catalog);
            const uint64_t got = code.materialize(expected).size();
            ok &= check(got == expected, why,
                        "(n=" + std::to_string(n) + ", d=" + std::to_string(d) + "): " +
                            std::to_string(got) + " != " + std::to_string(expected));
            ++checked;
        }
    ok &= check(size_formula({12, 4}, catalog) == 3072, why, "(12,4) formula is not 3072");
    ok &= check(size_formula({5, 3}, catalog) == 9, why, "(5,3) formula is not 9");
    ok &= check(checked >= 50, why, "grid unexpectedly small");
    return ok;
}

bool stitched_aux6(std::string& why) {
    const CliResult r = run_cli("aux --order 6");
    bool ok = check(r.exit_code == 0, why, "aux --order 6 exited nonzero");
    std::istringstream in(r.out);
    const CodeFile file = read_code_file(in);
    ok &= check(file.code.size() == 178, why, "aux --order 6 did not emit 178 codewords");

    AuxCatalog catalog;
    const auto code = catalog.get(6, false);
    ok &= check(code->size() == 178, why, "stitched size is not 178");
    ok &= check(verify_aux(*code).pass, why, "verify_aux(stitched 6) failed");
    int odd = 0;
    for (const auto& p : code->codewords)
        if (sign(p) == Parity::odd) ++odd;
    ok &= check(odd == 4, why, "bridges are not the only odd codewords");

    SearchConstraints cs;
    cs.must_use = {3};
    const SearchOutcome m57 = search_parity_preserving(5, 57, cs);
    ok &= check(m57.found, why, "order-5 size-57 search failed");
    const SearchOutcome m58 = search_parity_preserving(5, 58, {});
    ok &= check(!m58.found && !m58.budget_exhausted, why,
                "order-5 size-58 search did not prove nonexistence");
    return ok;
}

bool decoder_golden(std::string& why) {
    AuxCatalog catalog;
    const LmrmCode c63 = construct({6, 3}, catalog);
    const auto got1 = Decoder(c63).decode(P("1 3 4 5 6 2"));
    bool ok = check(got1 && *got1 == P("1 2 4 6 5 3"), why, "first worked example failed");
    const LmrmCode c155 = construct({15, 5}, catalog);
    const auto got2 = Decoder(c155).decode(P("12 3 9 7 5 2 11 15 1 6 8 13 4 10 14"));
    ok &= check(got2 && *got2 == P("11 1 8 6 7 2 12 13 3 5 9 14 4 10 15"), why,
                "second worked example failed");
    return ok;
}

bool decoder_radius(std::string& why) {
    AuxCatalog catalog;
    bool ok = true;
    {
        const LmrmCode code = construct({6, 3}, catalog);
        const Decoder dec(code);
        uint64_t total = 0;
        for (const auto& sigma : code.materialize()) {
            // enumerate the radius-1 ball directly
            std::vector<uint8_t> cur(6, 0);
            std::vector<bool> used(7, false);
            std::function<void(int)> rec = [&](int pos) {
                if (pos > 6) {
                    const Permutation tau = Permutation::unchecked(cur);
                    const auto got = dec.decode(tau);
                    ok &= (got && *got == sigma);
                    ++total;
                    return;
                }
                for (int v = std::max(1, sigma(pos) - 1); v <= std::min(6, sigma(pos) + 1); ++v) {
                    if (used[static_cast<size_t>(v)]) continue;
                    used[static_cast<size_t>(v)] = true;
                    cur[static_cast<size_t>(pos - 1)] = static_cast<uint8_t>(v);
                    rec(pos + 1);
                    used[static_cast<size_t>(v)] = false;
                }
            };
            rec(1);
        }
        ok = check(ok, why, "(6,3) exhaustive radius-1 decode failed");
        ok &= check(total == 18 * 13, why, "(6,3) ball enumeration has unexpected size");
    }
    for (auto [n, d] : std::vector<std::pair<int, int>>{{8, 4}, {12, 4}, {15, 5}}) {
        const LmrmCode code = construct({n, d}, catalog);
        const Decoder dec(code);
        const auto mat = code.materialize();
        const int t = (d - 1) / 2;
        SplitMix64 rng(424242);
        for (int rep = 0; rep < 10000; ++rep) {
            const auto& sigma = mat[static_cast<size_t>(rng.below(mat.size()))];
            const Permutation tau = sample_bounded_error(sigma, t, rng);
            const auto got = dec.decode(tau);
            if (!(got && *got == sigma)) {
                ok = check(false, why,
                           "sampled decode failed at (n=" + std::to_string(n) +
                               ", d=" + std::to_string(d) + ")");
                break;
            }
        }
    }
    return ok;
}

bool rank_unrank(std::string& why) {
    AuxCatalog catalog;
    bool ok = true;
    for (auto [n, d] : std::vector<std::pair<int, int>>{{6, 3}, {8, 4}}) {
        const LmrmCode code = construct({n, d, true}, catalog);
        const RankableCode rk(code);
        const auto mat = code.materialize();
        for (uint64_t g = 0; g < mat.size(); ++g) {
            const auto r = rk.rank(mat[static_cast<size_t>(g)]);
            if (!r || *r != g || !(rk.unrank(g) == mat[static_cast<size_t>(g)])) {
                ok = check(false, why,
                           "roundtrip failed at (n=" + std::to_string(n) + ", d=" +
                               std::to_string(d) + ", g=" + std::to_string(g) + ")");
                break;
            }
        }
    }
    const LmrmCode code = construct({12, 4, true}, catalog);
    const RankableCode rk(code);
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 1000; ++rep) {
        const uint64_t m = rng() % rk.total();
        const auto r = rk.rank(rk.unrank(m));
        if (!r || *r != m) {
            ok = check(false, why, "(12,4) sampled roundtrip failed");
            break;
        }
    }
    return ok;
}

bool complete_codes(std::string& why) {
    bool ok = true;
    for (int n = 1; n <= 6; ++n) {
        const auto code = materialize_complete(n);
        std::unordered_set<Permutation, PermutationHash> set(code.begin(), code.end());
        ok &= check(code.size() == factorial(n) && set.size() == code.size(), why,
                    "complete(" + std::to_string(n) + ") is not complete/distinct");
        for (size_t i = 0; i + 1 < code.size(); ++i)
            if (!push_to_top_step(code[i], code[i + 1])) {
                ok = check(false, why, "complete(" + std::to_string(n) + ") step is not t_^j");
                break;
            }
        if (code.size() > 1)
            ok &= check(push_to_top_step(code.back(), code.front()).has_value(), why,
                        "complete(" + std::to_string(n) + ") is not cyclic");
    }
    const auto code6 = materialize_complete(6);
    for (uint64_t g = 0; g < code6.size(); ++g) {
        if (rank_complete(code6[static_cast<size_t>(g)]) != g ||
            !(unrank_complete(6, g) == code6[static_cast<size_t>(g)])) {
            ok = check(false, why, "complete(6) rank/unrank roundtrip failed");
            break;
        }
    }
    return ok;
}

bool kendall_snake(std::string& why) {
    const CliResult r = run_cli("snake --m 2");
    bool ok = check(r.exit_code == 0, why, "snake --m 2 exited nonzero");
    std::istringstream in(r.out);
    const CodeFile file = read_code_file(in);
    ok &= check(file.code.size() == 232, why, "snake --m 2 did not emit 232 codewords");
    const uint64_t closed_form = (2 * 2 * (factorial(6) / 2)) / 6 - (2 * 2 - 2) * 2 * 2;
    ok &= check(closed_form == 232, why, "closed-form size is not 232");
    const SnakeReport rep = verify_snake(file.code);
    ok &= check(rep.pass, why, "spread-2 verification failed: " + rep.failure);
    return ok;
}

bool rate_curves(std::string& why) {
    const double log2e = 1.0 / std::log(2.0);
    const double lo = std::log2(1.0 / 0.5) + 2 * 0.5 * (log2e - 1.0) - 1.0;
    const double hi = -2 * 0.5 * std::log2(1.0 / 0.5) + 2 * (1.0 - 0.5) * log2e;
    bool ok = check(std::abs(lo - hi) <= 1e-12, why, "f_GV branches disagree at delta = 1/2");
    ok &= check(rate_upper(1.0) == 0.0, why, "upper bound at delta = 1 is not exactly 0");
    ok &= check(rate_construction(1.0) == 0.0, why, "construction rate at delta = 1 is not 0");
    for (int i = 5; i <= 100; ++i) {
        const double delta = i / 100.0;
        if (!(rate_construction(delta) >= rate_partition(delta) - 1e-9)) {
            ok = check(false, why, "construction rate below partition rate at delta = " +
                                       std::to_string(delta));
            break;
        }
    }
    return ok;
}

bool determinism(std::string& why) {
    bool ok = true;
    for (const char* cmd : {"aux --order 6", "aux --order 5", "snake --m 2",
                            "construct -n 8 -d 4", "rate-table --from 0.05 --to 1.0 --step 0.01",
                            "simulate -n 6 -d 3 --trials 5000 --noise 1 --seed 7 --workers 1"}) {
        const CliResult a = run_cli(cmd);
        const CliResult b = run_cli(cmd);
        ok &= check(a.exit_code == 0 && b.exit_code == 0, why,
                    std::string("command failed: ") + cmd);
        ok &= check(a.out == b.out, why, std::string("outputs differ between runs: ") + cmd);
    }
    const CliResult w1 = run_cli("simulate -n 6 -d 3 --trials 5000 --noise 1 --seed 7 --workers 1");
    const CliResult w8 = run_cli("simulate -n 6 -d 3 --trials 5000 --noise 1 --seed 7 --workers 8");
    ok &= check(w1.out == w8.out, why, "simulate output depends on the worker count");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli>\n";
        return 64;
    }
    g_cli = argv[1];

    const std::vector<Criterion> criteria = {
        {1, "golden auxiliary code (order 4)", 1.0, golden_aux4},
        {2, "golden main code (n=6, d=3)", 1.0, golden_main_code},
        {3, "size formula equals materialized size on the grid", 60.0, size_formula_grid},
        {4, "stitched auxiliary code (order 6) and order-5 optimum", 5.0, stitched_aux6},
        {5, "decoder worked examples", 1.0, decoder_golden},
        {6, "decoder radius property", 60.0, decoder_radius},
        {7, "rank/unrank bijection and enumeration order", 10.0, rank_unrank},
        {8, "complete codes", 5.0, complete_codes},
        {9, "Kendall snake (m=2)", 30.0, kendall_snake},
        {10, "rate curves", 1.0, rate_curves},
        {11, "deterministic outputs (incl. parallel simulate)", 120.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string why;
        bool pass = false;
        try {
            pass = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_seconds) {
            pass = false;
            if (why.empty())
                why = "over time budget (" + std::to_string(secs) + "s > " +
                      std::to_string(c.budget_seconds) + "s)";
        }
        std::printf("criterion %2d [%s] %.2fs  %s%s%s\n", c.id, pass ? "PASS" : "FAIL", secs,
                    c.name, why.empty() ? "" : " -- ", why.c_str());
        if (!pass) ++failures;
    }
    return failures;
}
