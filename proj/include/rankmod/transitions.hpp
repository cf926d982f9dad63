#pragma once

#include <stdexcept>
#include <string>

#include "rankmod/permutation.hpp"

namespace rankmod {

// Push transitions in vector notation:
//   push-to-index  t_{i^j}: the element at index j moves to index i (i < j),
//                           entries i..j-1 shift down by one;
//   push-to-bottom t_{vj} : the element at index j moves to index n.
// Push-to-the-top is t_{1^j}.
struct Transition {
    enum class Kind : uint8_t { push_to_index, push_to_bottom };

    Kind kind = Kind::push_to_index;
    int i = 1;  // destination index (push_to_index only)
    int j = 1;  // source index

    static Transition push_to_top(int j) { return {Kind::push_to_index, 1, j}; }
    static Transition push_to_index(int i, int j) { return {Kind::push_to_index, i, j}; }
    static Transition push_to_bottom(int j) { return {Kind::push_to_bottom, 1, j}; }

    bool operator==(const Transition& o) const {
        return kind == o.kind && j == o.j && (kind == Kind::push_to_bottom || i == o.i);
    }

    std::string to_string() const {
        if (kind == Kind::push_to_bottom) return "t_{v" + std::to_string(j) + "}";
        if (i == 1) return "t_{^" + std::to_string(j) + "}";
        return "t_{" + std::to_string(i) + "^" + std::to_string(j) + "}";
    }
};

// In-place application on a raw image vector (1-based semantics, index = pos-1).
inline void apply_push_to_index(std::vector<uint8_t>& v, int i, int j) {
    const uint8_t x = v[static_cast<size_t>(j - 1)];
    for (int t = j - 1; t >= i; --t) v[static_cast<size_t>(t)] = v[static_cast<size_t>(t - 1)];
    v[static_cast<size_t>(i - 1)] = x;
}

inline void apply_push_to_bottom(std::vector<uint8_t>& v, int j) {
    const int n = static_cast<int>(v.size());
    const uint8_t x = v[static_cast<size_t>(j - 1)];
    for (int t = j - 1; t < n - 1; ++t) v[static_cast<size_t>(t)] = v[static_cast<size_t>(t + 1)];
    v[static_cast<size_t>(n - 1)] = x;
}

// Inverse of push-to-the-top: the front element moves back to index j.
inline void apply_push_to_top_inverse(std::vector<uint8_t>& v, int j) {
    const uint8_t x = v[0];
    for (int t = 0; t < j - 1; ++t) v[static_cast<size_t>(t)] = v[static_cast<size_t>(t + 1)];
    v[static_cast<size_t>(j - 1)] = x;
}

inline Permutation apply_transition(const Transition& t, const Permutation& sigma) {
    const int n = sigma.size();
    if (t.j < 1 || t.j > n || (t.kind == Transition::Kind::push_to_index && (t.i < 1 || t.i >= t.j)))
        throw std::out_of_range("apply_transition: index out of bounds");
    std::vector<uint8_t> v = sigma.image();
    if (t.kind == Transition::Kind::push_to_index)
        apply_push_to_index(v, t.i, t.j);
    else
        apply_push_to_bottom(v, t.j);
    return Permutation::unchecked(std::move(v));
}

inline Permutation push_to_top(const Permutation& sigma, int j) {
    return apply_transition(Transition::push_to_top(j), sigma);
}

inline Permutation push_to_top_inverse(const Permutation& sigma, int j) {
    if (j < 1 || j > sigma.size()) throw std::out_of_range("push_to_top_inverse: bad index");
    std::vector<uint8_t> v = sigma.image();
    apply_push_to_top_inverse(v, j);
    return Permutation::unchecked(std::move(v));
}

// Identifies j such that next == t_{^j}(cur), if any.
inline std::optional<int> push_to_top_step(const Permutation& cur, const Permutation& next) {
    if (cur.size() != next.size()) return std::nullopt;
    const int n = cur.size();
    int j = 0;
    for (int i = 1; i <= n; ++i)
        if (cur(i) == next(1)) { j = i; break; }
    if (j == 0) return std::nullopt;
    for (int i = 2; i <= j; ++i)
        if (next(i) != cur(i - 1)) return std::nullopt;
    for (int i = j + 1; i <= n; ++i)
        if (next(i) != cur(i)) return std::nullopt;
    return j;
}

}  // namespace rankmod
