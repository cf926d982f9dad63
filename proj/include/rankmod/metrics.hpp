#pragma once

#include "rankmod/permutation.hpp"

namespace rankmod {

// Chebyshev distance in vector notation: max_j |sigma(j) - tau(j)|.
inline int dist_linf(const Permutation& sigma, const Permutation& tau) {
    if (sigma.size() != tau.size())
        throw std::invalid_argument("dist_linf: dimension mismatch");
    int best = 0;
    for (int j = 1; j <= sigma.size(); ++j) {
        const int d = sigma(j) > tau(j) ? sigma(j) - tau(j) : tau(j) - sigma(j);
        if (d > best) best = d;
    }
    return best;
}

// Kendall tau distance as the discordant-pair count
//   |{(i,j) : sigma(i) < sigma(j) and tau(i) > tau(j)}|.
// Reference O(n^2) pair scan.
inline int dist_kendall(const Permutation& sigma, const Permutation& tau) {
    if (sigma.size() != tau.size())
        throw std::invalid_argument("dist_kendall: dimension mismatch");
    const int n = sigma.size();
    int count = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if ((sigma(i) < sigma(j)) != (tau(i) < tau(j))) ++count;
    return count;
}

namespace detail {
inline int merge_count(std::vector<uint8_t>& a, std::vector<uint8_t>& tmp, int lo, int hi) {
    if (hi - lo < 2) return 0;
    const int mid = (lo + hi) / 2;
    int inv = merge_count(a, tmp, lo, mid) + merge_count(a, tmp, mid, hi);
    int l = lo, r = mid, o = lo;
    while (l < mid && r < hi) {
        if (a[static_cast<size_t>(l)] <= a[static_cast<size_t>(r)]) tmp[static_cast<size_t>(o++)] = a[static_cast<size_t>(l++)];
        else { inv += mid - l; tmp[static_cast<size_t>(o++)] = a[static_cast<size_t>(r++)]; }
    }
    while (l < mid) tmp[static_cast<size_t>(o++)] = a[static_cast<size_t>(l++)];
    while (r < hi) tmp[static_cast<size_t>(o++)] = a[static_cast<size_t>(r++)];
    std::copy(tmp.begin() + lo, tmp.begin() + hi, a.begin() + lo);
    return inv;
}
}  // namespace detail

// O(n log n) route: the discordant-pair count equals the inversion count of
// tau composed with sigma^{-1}.
inline int dist_kendall_fast(const Permutation& sigma, const Permutation& tau) {
    if (sigma.size() != tau.size())
        throw std::invalid_argument("dist_kendall_fast: dimension mismatch");
    const int n = sigma.size();
    std::vector<uint8_t> seq(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        seq[static_cast<size_t>(sigma(i) - 1)] = static_cast<uint8_t>(tau(i));
    std::vector<uint8_t> tmp(seq.size());
    return detail::merge_count(seq, tmp, 0, n);
}

}  // namespace rankmod
