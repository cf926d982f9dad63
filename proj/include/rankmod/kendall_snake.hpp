#pragma once

#include <unordered_set>
#include <vector>

#include "rankmod/permutation.hpp"
#include "rankmod/phi_frame.hpp"
#include "rankmod/search.hpp"
#include "rankmod/transitions.hpp"

namespace rankmod {

// Single-error-detecting Gray codes over S_{2m+2} under the Kendall metric:
// cyclic push-to-the-top codes in which no codeword is another codeword
// composed with an adjacent-position transposition (spread 2).  Built by
// stitching 2m translated order-(2m+1) parity-preserving blocks with bridges.

struct SnakeCode {
    int order = 6;           // 2m+2
    std::vector<Permutation> codewords;
    std::vector<int> transitions;  // cyclic, top indices
    uint64_t size() const { return codewords.size(); }
};

// One translated block: starts at pi_hat_r, ends at t_{^(2m-1)}^{-1} pi_hat_r,
// keeps a constant last element, and excludes the t_{^(2m-1)}-orbit of
// sigma_tilde_r.  Throws when a structural property fails.
inline std::vector<Permutation> build_phat(int m, int r, const HsnakeBlock& block,
                                           std::vector<int>* transitions_out = nullptr) {
    const int k = 2 * m + 2;
    const PhiFrame frame(m);
    const Permutation& pi_hat = frame.pi_hat[static_cast<size_t>(r % (2 * m))];
    const Permutation sigma_tilde = frame.sigma_tilde(r);

    // embed the block into S_k and left-translate by sigma_tilde sigma_hat^{-1}
    auto embed = [k](const Permutation& p) {
        std::vector<uint8_t> img = p.image();
        for (int v = p.size() + 1; v <= k; ++v) img.push_back(static_cast<uint8_t>(v));
        return Permutation::unchecked(std::move(img));
    };
    const Permutation mult = compose(sigma_tilde, inverse(embed(block.excluded_rep)));
    std::vector<Permutation> seq;
    seq.reserve(block.codewords.size());
    for (const auto& p : block.codewords) seq.push_back(compose(mult, embed(p)));

    // rotate so the sequence starts at pi_hat_r
    size_t at = seq.size();
    for (size_t i = 0; i < seq.size(); ++i)
        if (seq[i] == pi_hat) { at = i; break; }
    if (at == seq.size()) throw std::logic_error("build_phat: pi_hat_r not in the translated block");
    std::vector<int> trans = block.transitions;
    std::rotate(seq.begin(), seq.begin() + static_cast<long>(at), seq.end());
    std::rotate(trans.begin(), trans.begin() + static_cast<long>(at), trans.end());

    if (!(seq.back() == push_to_top_inverse(pi_hat, 2 * m - 1)))
        throw std::logic_error("build_phat: block does not end at t_{^(2m-1)}^{-1} pi_hat_r");
    const int last = pi_hat(k);
    for (const auto& p : seq) {
        if (p(k) != last) throw std::logic_error("build_phat: last element not constant");
        if (p == sigma_tilde) throw std::logic_error("build_phat: sigma_tilde not excluded");
        if (!is_even(p)) throw std::logic_error("build_phat: odd permutation in block");
    }
    if (transitions_out) *transitions_out = std::move(trans);
    return seq;
}

inline SnakeCode build_snake(int m, uint64_t budget = default_search_budget()) {
    if (m < 2) throw std::invalid_argument("build_snake: m must be >= 2");
    // the search is guaranteed only at m = 2; larger orders are opt-in
    if (m > 2 && !search_budget_configured())
        throw std::invalid_argument(
            "build_snake: block search beyond m=2 is off by default; "
            "set RANKMOD_SEARCH_BUDGET to attempt it");
    const auto block = search_hsnake_block(m, budget);
    if (!block)
        throw std::runtime_error("build_snake: no order-(2m+1) block found within budget");
    const int k = 2 * m + 2;
    const PhiFrame frame(m);
    SnakeCode snake;
    snake.order = k;
    for (int r = 0; r < 2 * m; ++r) {
        std::vector<int> trans;
        std::vector<Permutation> seq = build_phat(m, r, *block, &trans);
        for (size_t i = 0; i < seq.size(); ++i) {
            snake.codewords.push_back(std::move(seq[i]));
            snake.transitions.push_back(i + 1 < seq.size() ? trans[i] : k);
        }
        snake.codewords.push_back(frame.bridges[static_cast<size_t>(r)]);  // beta_{r+1}
        snake.transitions.push_back(k);
    }
    return snake;
}

struct SnakeReport {
    bool pass = true;
    uint64_t size = 0;
    std::string failure;
    std::optional<Permutation> witness;
    std::optional<int> witness_index;  // the i of the offending (i, i+1) swap

    void fail(std::string why) {
        if (pass) failure = std::move(why);
        pass = false;
    }
};

namespace detail {
inline Permutation adjacent_swap(const Permutation& p, int i) {
    std::vector<uint8_t> img = p.image();
    std::swap(img[static_cast<size_t>(i - 1)], img[static_cast<size_t>(i)]);
    return Permutation::unchecked(std::move(img));
}
}  // namespace detail

// Hash-accelerated verification: distinctness, the cyclic Gray property, and
// for every codeword sigma and i the absence of sigma (i, i+1) from the code.
inline SnakeReport verify_snake(const std::vector<Permutation>& code) {
    SnakeReport rep;
    rep.size = code.size();
    if (code.empty()) {
        rep.fail("empty code");
        return rep;
    }
    const int n = code.front().size();
    std::unordered_set<Permutation, PermutationHash> set;
    for (const auto& p : code)
        if (!set.insert(p).second) {
            rep.fail("duplicate codeword");
            rep.witness = p;
            return rep;
        }
    for (size_t i = 0; i < code.size(); ++i) {
        if (!push_to_top_step(code[i], code[(i + 1) % code.size()])) {
            rep.fail("not a cyclic push-to-the-top code at index " + std::to_string(i));
            return rep;
        }
    }
    for (const auto& p : code) {
        for (int i = 1; i < n; ++i) {
            if (set.count(detail::adjacent_swap(p, i))) {
                rep.fail("adjacent transposition collision");
                rep.witness = p;
                rep.witness_index = i;
                return rep;
            }
        }
    }
    return rep;
}

// Quadratic reference: min pairwise position-adjacent relation scan.
inline SnakeReport verify_snake_naive(const std::vector<Permutation>& code) {
    SnakeReport rep;
    rep.size = code.size();
    if (code.empty()) {
        rep.fail("empty code");
        return rep;
    }
    const int n = code.front().size();
    for (size_t a = 0; a < code.size(); ++a)
        for (size_t b = 0; b < code.size(); ++b) {
            if (a == b) continue;
            for (int i = 1; i < n; ++i)
                if (code[a] == detail::adjacent_swap(code[b], i)) {
                    rep.fail("adjacent transposition collision");
                    rep.witness = code[b];
                    rep.witness_index = i;
                    return rep;
                }
        }
    std::unordered_set<Permutation, PermutationHash> set(code.begin(), code.end());
    if (set.size() != code.size()) rep.fail("duplicate codeword");
    for (size_t i = 0; i < code.size(); ++i)
        if (!push_to_top_step(code[i], code[(i + 1) % code.size()]))
            rep.fail("not a cyclic push-to-the-top code");
    return rep;
}

}  // namespace rankmod
