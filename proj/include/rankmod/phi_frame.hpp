#pragma once

#include <vector>

#include "rankmod/permutation.hpp"
#include "rankmod/transitions.hpp"

namespace rankmod {

// The rotation-and-swap frame used by the stitched constructions on
// S_{2m+2}.  With phi = t_{^(2m+2)}^2 t_{^(2m-1)}^{-1},
//   pi_hat_r  = phi^r(id),
//   beta_r    = t_{^(2m+2)}^{-1}(pi_hat_r)   (the r-bridge),
// and phi^(2m) = id.  Every pi_hat_r is even, every bridge odd, and
// pi_hat_r(2m+2) follows the case formula checked in the constructor.
struct PhiFrame {
    int m = 2;
    int order = 6;                      // 2m+2
    std::vector<Permutation> pi_hat;    // r = 0..2m-1
    std::vector<Permutation> bridges;   // index r-1 holds beta_r, r = 1..2m

    explicit PhiFrame(int m_) : m(m_), order(2 * m_ + 2) {
        if (m < 2) throw std::invalid_argument("PhiFrame: m must be >= 2");
        const int k = order;
        Permutation cur = Permutation::identity(k);
        for (int r = 0; r < 2 * m; ++r) {
            pi_hat.push_back(cur);
            cur = apply_phi(cur);
        }
        if (!(cur == pi_hat.front()))
            throw std::logic_error("PhiFrame: phi^(2m) != id");
        for (int r = 1; r <= 2 * m; ++r) {
            const Permutation& target = pi_hat[static_cast<size_t>(r % (2 * m))];
            bridges.push_back(push_to_top_inverse(target, k));
        }
        for (int r = 0; r < 2 * m; ++r) {
            const int expect = (r % (2 * m) == 0) ? k : 2 * m + 1 - (r % (2 * m));
            if (pi_hat[static_cast<size_t>(r)](k) != expect)
                throw std::logic_error("PhiFrame: last-element case formula violated");
        }
        for (const auto& b : bridges) {
            if (is_even(b)) throw std::logic_error("PhiFrame: bridge is even");
            const int last = b(k);
            if (last != 1 && last != 2 * m + 1)
                throw std::logic_error("PhiFrame: bridge last element out of {1, 2m+1}");
        }
    }

    Permutation apply_phi(const Permutation& p) const {
        // phi(p) = t_{^(2m+2)}^2 (t_{^(2m-1)}^{-1}(p))
        Permutation q = push_to_top_inverse(p, 2 * m - 1);
        q = push_to_top(q, order);
        return push_to_top(q, order);
    }

    // sigma_tilde_r = t_{^(2m+1)}^{-1}(pi_hat_r), the snake blocks' excluded
    // representative.
    Permutation sigma_tilde(int r) const {
        return push_to_top_inverse(pi_hat[static_cast<size_t>(r % (2 * m))], 2 * m + 1);
    }
};

inline PhiFrame build_phi_frame(int m) { return PhiFrame(m); }

}  // namespace rankmod
