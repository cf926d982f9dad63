#pragma once

#include <vector>

#include "rankmod/permutation.hpp"
#include "rankmod/transitions.hpp"

namespace rankmod {

// Complete cyclic push-to-the-top Gray codes over S_n, built by the canonical
// recursion: the n=2 code is generated by t_{^2}, t_{^2}; for n > 2 every
// transition t_{^j} of the order-(n-1) code expands into t_{^(n+1-j)} followed
// by n-1 copies of t_{^n}.  The expansion realizes t_{v(n+1-j)} on the block
// anchors via the identity t_{vq} = t_{^n}^{n-1} t_{^q}, so anchors keep the
// value 1 in front and track the smaller code on the reversed, complemented
// tail.  The sequence starts at the identity and is cyclic.
//
// Enumeration order: rank 0 is id; consecutive ranks differ by one transition.

struct CompleteCode {
    int order = 1;
    explicit CompleteCode(int n) : order(n) {
        if (n < 1 || n > kMaxOrder)
            throw std::invalid_argument("CompleteCode: invalid order");
    }
    uint64_t size() const { return factorial(order); }
};

namespace detail {
// Transition (1-based position g within the cyclic stream) at level n.
// O(n) per query.
inline int complete_transition_rec(int n, uint64_t g) {
    if (n <= 1) throw std::invalid_argument("complete code of order 1 has no transitions");
    if (n == 2) return 2;
    const uint64_t u = (g - 1) % static_cast<uint64_t>(n);
    if (u > 0) return n;
    const uint64_t parent = (g - 1) / static_cast<uint64_t>(n) + 1;
    return n + 1 - complete_transition_rec(n - 1, parent);
}
}  // namespace detail

// The g-th transition of the generating sequence, g in [1, n!] (applying all
// n! transitions from id returns to id).  Requires n <= 20 so that g fits.
inline int complete_transition_at(int n, uint64_t g) {
    return detail::complete_transition_rec(n, g);
}

// Streaming enumeration cursor; O(1) amortized per step and no factorial
// arithmetic, so it works for any order up to kMaxOrder.
class CompleteCursor {
public:
    explicit CompleteCursor(int n)
        : n_(n), current_(Permutation::identity(n).image()), pos_(static_cast<size_t>(std::max(n - 1, 1)), 0) {
        if (n < 1 || n > kMaxOrder) throw std::invalid_argument("CompleteCursor: invalid order");
    }

    const std::vector<uint8_t>& current() const { return current_; }
    Permutation current_permutation() const { return Permutation::unchecked(current_); }

    // Advances one transition and returns the top index j of the applied t_{^j}.
    int step() {
        const int j = next_transition(n_);
        if (j > 1) apply_push_to_index(current_, 1, j);
        return j;
    }

private:
    // pos_[level-2] is the position inside the current block at that level.
    int next_transition(int level) {
        if (level <= 1) return 1;  // order-1 code: no movement
        if (level == 2) return 2;
        auto& u = pos_[static_cast<size_t>(level - 2)];
        const int out = (u == 0) ? (level + 1 - next_transition(level - 1)) : level;
        u = static_cast<uint8_t>((u + 1) % level);
        return out;
    }

    int n_;
    std::vector<uint8_t> current_;
    std::vector<uint8_t> pos_;
};

inline std::vector<Permutation> materialize_complete(int n, uint64_t limit = 1000000) {
    const uint64_t total = factorial(n);
    if (total > limit)
        throw std::length_error("materialize_complete: size exceeds limit");
    std::vector<Permutation> out;
    out.reserve(static_cast<size_t>(total));
    CompleteCursor cur(n);
    for (uint64_t g = 0; g < total; ++g) {
        out.push_back(cur.current_permutation());
        cur.step();
    }
    return out;
}

// Rank of sigma in the enumeration order (0-based, rank(id) = 0).  Recursive
// descent: the offset within the rotation block comes from the position of the
// value 1, the parent permutation from the anchor's reversed complemented
// tail.  O(n^2) overall.
inline uint64_t rank_complete(const Permutation& sigma) {
    const int n = sigma.size();
    if (n > 20) throw std::overflow_error("rank_complete: order too large for 64-bit ranks");
    if (n == 1) return 0;
    std::vector<uint8_t> cur = sigma.image();
    // Peel the offset at each level top-down, rebuilding the parent.
    std::vector<uint64_t> offsets;
    for (int level = n; level >= 2; --level) {
        int p1 = 0;
        for (int i = 0; i < level; ++i)
            if (cur[static_cast<size_t>(i)] == 1) { p1 = i + 1; break; }
        const int u = (p1 == 1) ? level : p1 - 1;
        // anchor = rho^(level-u)(cur), rho = t_{^level}
        std::vector<uint8_t> anchor = cur;
        for (int t = 0; t < level - u; ++t) apply_push_to_index(anchor, 1, level);
        // parent(j) = level + 1 - anchor(level + 1 - j), j = 1..level-1
        std::vector<uint8_t> parent(static_cast<size_t>(level - 1));
        for (int j = 1; j < level; ++j)
            parent[static_cast<size_t>(j - 1)] =
                static_cast<uint8_t>(level + 1 - anchor[static_cast<size_t>(level - j)]);
        offsets.push_back(static_cast<uint64_t>(u));
        cur = std::move(parent);
    }
    // Combine bottom-up: rank_level = ((rank_parent - 1) mod (level-1)!) * level + u, mod level!.
    uint64_t rank = 0;
    int level = 2;
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it, ++level) {
        const uint64_t fprev = factorial(level - 1);
        rank = ((rank + fprev - 1) % fprev) * static_cast<uint64_t>(level) + *it;
        rank %= factorial(level);
    }
    return rank;
}

inline Permutation unrank_complete(int n, uint64_t m) {
    if (n < 1 || n > 20) throw std::invalid_argument("unrank_complete: order out of range");
    if (m >= factorial(n)) throw std::out_of_range("unrank_complete: rank out of range");
    if (n == 1) return Permutation::identity(1);
    // Peel offsets top-down, then rebuild bottom-up.
    std::vector<int> offsets(static_cast<size_t>(n + 1), 0);
    uint64_t r = m;
    for (int level = n; level >= 2; --level) {
        if (r == 0) { offsets[static_cast<size_t>(level)] = 0; continue; }  // identity from here down
        const int u = static_cast<int>((r - 1) % static_cast<uint64_t>(level)) + 1;
        const uint64_t block = (r - 1) / static_cast<uint64_t>(level) + 1;
        offsets[static_cast<size_t>(level)] = u;
        r = block % factorial(level - 1);
    }
    std::vector<uint8_t> cur{1};
    for (int level = 2; level <= n; ++level) {
        const int u = offsets[static_cast<size_t>(level)];
        std::vector<uint8_t> next(static_cast<size_t>(level));
        if (u == 0) {
            // identity at this level only arises when the whole remainder was 0
            for (int i = 0; i < level; ++i) next[static_cast<size_t>(i)] = static_cast<uint8_t>(i + 1);
        } else {
            // anchor(1) = 1, anchor(1+q) = level + 1 - parent(level - q)
            next[0] = 1;
            for (int q = 1; q < level; ++q)
                next[static_cast<size_t>(q)] =
                    static_cast<uint8_t>(level + 1 - cur[static_cast<size_t>(level - 1 - q)]);
            for (int t = 0; t < u % level; ++t) apply_push_to_index(next, 1, level);
        }
        cur = std::move(next);
    }
    return Permutation::unchecked(std::move(cur));
}

}  // namespace rankmod
