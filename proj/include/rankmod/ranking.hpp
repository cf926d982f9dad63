#pragma once

#include <vector>

#include "rankmod/lmrm_code.hpp"

namespace rankmod {

// Ranking (codeword -> index) and unranking/encoding (index -> codeword) for
// the rankable code variant.  Supported for d | n with n >= 2d: all classes
// then share one size k, the base tier is ranked through the complete code
// and every other tier through its auxiliary code's rank support.
//
// Ranks are 0-based and equal the enumeration position from sigma0, so
// unrank(m+1) is one transition past unrank(m).  Tier digits combine as
//   rank_m = s_m + M * ((rank_{m+1} - [s_m > 0]) mod N_{m+1}),
// reflecting that each tier block ends (not begins) at its parent codeword.

class RankableCode {
public:
    explicit RankableCode(const LmrmCode& code) : code_(&code) {
        const CodeParams& p = code.params();
        if (p.n % p.d != 0 || p.n < 2 * p.d || p.odd_class_last)
            throw std::invalid_argument("RankableCode: supported only for d | n, n >= 2d, default order");
        if (!p.rankable)
            throw std::invalid_argument("RankableCode: construct the code with rankable=true");
        k_ = p.n / p.d;
        aux_ = code.aux_at_level(1);
        if (!aux_ || !aux_->has_rank_support())
            throw std::invalid_argument("RankableCode: auxiliary code lacks rank support");
        const Permutation s0 = code.start();
        const ClassLayout& lay = code.layout();
        alpha_.assign(static_cast<size_t>(p.n) + 1, 0);
        alpha_class_.assign(static_cast<size_t>(p.n) + 1, 0);
        inv_alpha_.assign(static_cast<size_t>(p.d) + 1,
                          std::vector<int>(static_cast<size_t>(k_) + 1, 0));
        for (int m = 1; m <= p.d; ++m)
            for (int pos = 1; pos <= k_; ++pos) {
                const int value = s0(lay.prefix[static_cast<size_t>(m)] + pos);
                alpha_[static_cast<size_t>(value)] = pos;
                alpha_class_[static_cast<size_t>(value)] = m;
                inv_alpha_[static_cast<size_t>(m)][static_cast<size_t>(pos)] = value;
            }
        // digit bases: complete code for the base tier, M-hat for the others
        tier_mod_.assign(static_cast<size_t>(p.d) + 1, 0);
        tier_mod_[static_cast<size_t>(p.d)] = factorial(k_);
        for (int m = p.d - 1; m >= 1; --m)
            tier_mod_[static_cast<size_t>(m)] = checked_mul(tier_mod_[static_cast<size_t>(m + 1)], aux_->size());
    }

    uint64_t total() const { return code_->size(); }
    uint64_t aux_base() const { return aux_->size(); }

    // 0-based rank; std::nullopt when sigma is not a codeword.
    std::optional<uint64_t> rank(const Permutation& sigma) const {
        const CodeParams& p = code_->params();
        if (sigma.size() != p.n) return std::nullopt;
        const ClassLayout& lay = code_->layout();
        const int d = p.d, k = k_;
        // base tier digit from the final window
        uint64_t r;
        {
            std::vector<uint8_t> pi(static_cast<size_t>(k), 0);
            uint64_t seen = 0;
            const int base = lay.prefix[static_cast<size_t>(d)];
            for (int i = base + 2; i <= p.n; ++i) {
                const int v = sigma(i);
                if (alpha_class_[static_cast<size_t>(v)] != d) return std::nullopt;
                const int a = alpha_[static_cast<size_t>(v)];
                pi[static_cast<size_t>(i - base - 1)] = static_cast<uint8_t>(a);
                seen |= uint64_t{1} << (a - 1);
            }
            int missing = 0;
            for (int a = 1; a <= k; ++a)
                if (!(seen >> (a - 1) & 1)) {
                    if (missing) return std::nullopt;
                    missing = a;
                }
            if (!missing) return std::nullopt;
            pi[0] = static_cast<uint8_t>(missing);
            if (!Permutation::is_valid_image(pi)) return std::nullopt;
            r = rank_complete(Permutation::unchecked(std::move(pi)));
        }
        uint64_t modulus = tier_mod_[static_cast<size_t>(d)];
        for (int j = d - 1; j >= 1; --j) {
            std::vector<uint8_t> pi(static_cast<size_t>(k) + 1, 0);
            uint64_t seen = 0;
            const int base = lay.prefix[static_cast<size_t>(j)];
            for (int i = base + 2; i <= base + k + 1; ++i) {
                const int v = sigma(i);
                const int a = (alpha_class_[static_cast<size_t>(v)] == j)
                                  ? alpha_[static_cast<size_t>(v)]
                                  : k + 1;
                pi[static_cast<size_t>(i - base - 1)] = static_cast<uint8_t>(a);
                if (seen >> (a - 1) & 1) return std::nullopt;
                seen |= uint64_t{1} << (a - 1);
            }
            int missing = 0;
            for (int a = 1; a <= k + 1; ++a)
                if (!(seen >> (a - 1) & 1)) {
                    if (missing) return std::nullopt;
                    missing = a;
                }
            if (!missing) return std::nullopt;
            pi[0] = static_cast<uint8_t>(missing);
            const auto s = aux_->rank_of(Permutation::unchecked(std::move(pi)));
            if (!s) return std::nullopt;
            r = *s + aux_->size() * ((r + modulus - (*s > 0 ? 1 : 0)) % modulus);
            modulus = tier_mod_[static_cast<size_t>(j)];
        }
        return r;
    }

    Permutation unrank(uint64_t m) const {
        if (m >= total()) throw std::out_of_range("RankableCode::unrank: rank out of range");
        const CodeParams& p = code_->params();
        const ClassLayout& lay = code_->layout();
        const int d = p.d, k = k_;
        const uint64_t mhat = aux_->size();
        // peel tier digits from least significant (class 1) upward
        std::vector<uint64_t> digit(static_cast<size_t>(d) + 1, 0);
        uint64_t r = m;
        for (int j = 1; j < d; ++j) {
            const uint64_t s = r % mhat;
            digit[static_cast<size_t>(j)] = s;
            r = (r / mhat + (s > 0 ? 1 : 0)) % tier_mod_[static_cast<size_t>(j + 1)];
        }
        digit[static_cast<size_t>(d)] = r;

        std::vector<uint8_t> img(static_cast<size_t>(p.n), 0);
        const Permutation pid = unrank_complete(k, digit[static_cast<size_t>(d)]);
        const int dbase = lay.prefix[static_cast<size_t>(d)];
        for (int i = dbase + 2; i <= p.n; ++i)
            img[static_cast<size_t>(i - 1)] =
                static_cast<uint8_t>(inv_alpha_[static_cast<size_t>(d)][static_cast<size_t>(pid(i - dbase))]);
        int threaded = inv_alpha_[static_cast<size_t>(d)][static_cast<size_t>(pid(1))];
        for (int j = d - 1; j >= 1; --j) {
            const Permutation pij = aux_->unrank(digit[static_cast<size_t>(j)]);
            const int base = lay.prefix[static_cast<size_t>(j)];
            for (int i = base + 2; i <= base + k + 1; ++i) {
                const int a = pij(i - base);
                img[static_cast<size_t>(i - 1)] = static_cast<uint8_t>(
                    a == k + 1 ? threaded : inv_alpha_[static_cast<size_t>(j)][static_cast<size_t>(a)]);
            }
            if (pij(1) != k + 1)
                threaded = inv_alpha_[static_cast<size_t>(j)][static_cast<size_t>(pij(1))];
        }
        img[0] = static_cast<uint8_t>(threaded);
        return Permutation(std::move(img));  // validated
    }

private:
    const LmrmCode* code_;
    int k_ = 2;
    std::shared_ptr<const AuxCode> aux_;
    std::vector<int> alpha_;
    std::vector<int> alpha_class_;
    std::vector<std::vector<int>> inv_alpha_;
    std::vector<uint64_t> tier_mod_;  // tier_mod_[m] = |C_m|
};

// M-hat: size of the rank-supporting auxiliary code on the given order (the
// aux order is class size + 1).
inline uint64_t rankable_aux_size(int aux_order, const AuxCatalog& catalog) {
    return catalog.size_of(aux_order, /*rankable=*/true);
}

}  // namespace rankmod
