#pragma once

#include <memory>
#include <thread>
#include <vector>

#include "rankmod/aux_code.hpp"
#include "rankmod/complete_code.hpp"
#include "rankmod/metrics.hpp"
#include "rankmod/permutation.hpp"
#include "rankmod/transitions.hpp"

namespace rankmod {

// The main construction: cyclic push-to-the-top Gray codes over S_n with
// pairwise Chebyshev distance >= d.  The code is grown tier by tier: the base
// tier permutes the last congruence-class block through a complete code, and
// each recursion step toward tier 1 expands every push transition with the
// generating sequence of a per-class auxiliary code, shifted to that class's
// position block.

struct CodeParams {
    int n = 2;
    int d = 2;
    bool rankable = false;
    // Optional reordering that makes the last block an odd-sized class
    // (slightly larger codes when floor(n/d) is even and d does not divide n).
    // Off by default; decoding and ranking support only the default order.
    bool odd_class_last = false;
};

struct ClassLayout {
    std::vector<int> class_of_level;  // level m (1-based) -> congruence class index
    std::vector<int> sizes;           // per level, |R_{class_of_level[m]}|
    std::vector<int> prefix;          // per level, elements before this level's block
};

inline ClassLayout class_layout(const CodeParams& p) {
    if (p.d < 2 || p.d > p.n || p.n > kMaxOrder)
        throw std::invalid_argument("class_layout: need 1 < d <= n <= 64");
    ClassLayout lay;
    lay.class_of_level.resize(static_cast<size_t>(p.d) + 1);
    for (int i = 1; i <= p.d; ++i) lay.class_of_level[static_cast<size_t>(i)] = i;
    if (p.odd_class_last) {
        // move the last odd-sized class into the final slot
        int pick = 0;
        for (int i = p.d; i >= 1; --i) {
            const int size = p.n / p.d + (i <= p.n % p.d ? 1 : 0);
            if (size % 2 == 1) { pick = i; break; }
        }
        if (pick != 0 && pick != p.d) {
            lay.class_of_level.erase(lay.class_of_level.begin() + pick);
            lay.class_of_level.push_back(pick);
        }
    }
    lay.sizes.resize(static_cast<size_t>(p.d) + 1);
    lay.prefix.resize(static_cast<size_t>(p.d) + 1);
    int acc = 0;
    for (int m = 1; m <= p.d; ++m) {
        const int cls = lay.class_of_level[static_cast<size_t>(m)];
        lay.sizes[static_cast<size_t>(m)] = p.n / p.d + (cls <= p.n % p.d ? 1 : 0);
        lay.prefix[static_cast<size_t>(m)] = acc;
        acc += lay.sizes[static_cast<size_t>(m)];
    }
    return lay;
}

// Start permutation: the concatenation of the congruence classes, each listed
// in ascending order rotated by one so the class minimum comes last.  For
// n = kd this reproduces sigma0(j) = d (j mod k) + ceil(j/k).
inline Permutation sigma0(const CodeParams& p) {
    const ClassLayout lay = class_layout(p);
    std::vector<uint8_t> img;
    img.reserve(static_cast<size_t>(p.n));
    for (int m = 1; m <= p.d; ++m) {
        const int cls = lay.class_of_level[static_cast<size_t>(m)];
        for (int v = cls + p.d; v <= p.n; v += p.d) img.push_back(static_cast<uint8_t>(v));
        img.push_back(static_cast<uint8_t>(cls));
    }
    return Permutation::unchecked(std::move(img));
}

class LmrmCode {
public:
    LmrmCode(CodeParams params, const AuxCatalog& catalog)
        : params_(params), layout_(class_layout(params)), start_(sigma0(params)) {
        const int n = params.n, d = params.d;
        if (n == d) {
            base_level_ = 0;  // single-codeword code
            size_ = 1;
            return;
        }
        if (n < 2 * d) {
            base_level_ = n % d;  // three-cycle base at this level
            tricycle_base_ = true;
            size_ = 3;
        } else {
            base_level_ = d;
            tricycle_base_ = false;
            base_order_ = layout_.sizes[static_cast<size_t>(d)];
            size_ = factorial(base_order_);
        }
        aux_.assign(static_cast<size_t>(base_level_) + 1, nullptr);
        level_size_.assign(static_cast<size_t>(base_level_) + 1, 0);
        level_size_[static_cast<size_t>(base_level_)] = size_;
        for (int m = base_level_ - 1; m >= 1; --m) {
            auto aux = catalog.get(layout_.sizes[static_cast<size_t>(m)] + 1, params.rankable);
            size_ = checked_mul(size_, aux->size());
            aux_[static_cast<size_t>(m)] = std::move(aux);
            level_size_[static_cast<size_t>(m)] = size_;
        }
    }

    const CodeParams& params() const { return params_; }
    const ClassLayout& layout() const { return layout_; }
    const Permutation& start() const { return start_; }
    uint64_t size() const { return size_; }
    int base_level() const { return base_level_; }
    bool has_tricycle_base() const { return tricycle_base_; }
    std::shared_ptr<const AuxCode> aux_at_level(int m) const {
        return (m >= 1 && m < base_level_) ? aux_[static_cast<size_t>(m)] : nullptr;
    }

    // |C_m| for tier m (1 = full code).
    uint64_t tier_size(int m) const { return level_size_[static_cast<size_t>(m)]; }

    // The g-th transition (1-based, g in [1, size]); applying all of them from
    // sigma0 walks the full cyclic code.
    Transition transition_at(uint64_t g) const {
        if (base_level_ == 0) throw std::out_of_range("transition_at: single-codeword code");
        return transition_rec(1, g);
    }

    class Cursor {
    public:
        explicit Cursor(const LmrmCode& code)
            : code_(&code), img_(code.start().image()),
              pos_(static_cast<size_t>(code.base_level_) + 1, 0) {
            if (code.base_level_ > 0 && !code.tricycle_base_)
                base_cursor_.emplace(code.base_order_);
        }

        const std::vector<uint8_t>& current() const { return img_; }
        Permutation current_permutation() const { return Permutation::unchecked(img_); }

        // Advances one transition; returns it.
        Transition step() {
            const Transition t = next_transition(1);
            apply_push_to_index(img_, t.i, t.j);
            return t;
        }

    private:
        Transition next_transition(int level) {
            const LmrmCode& c = *code_;
            const int p = c.layout_.prefix[static_cast<size_t>(level)];
            if (level == c.base_level_) {
                if (c.tricycle_base_) return Transition::push_to_index(p + 1, p + 3);
                const int j = base_cursor_->step();
                return Transition::push_to_index(p + 1, p + j);
            }
            const AuxCode& aux = *c.aux_[static_cast<size_t>(level)];
            auto& u = pos_[static_cast<size_t>(level)];
            Transition out = (u == 0)
                ? Transition::push_to_index(p + 1, next_transition(level + 1).j)
                : Transition::push_to_index(p + 1, p + aux.transitions[u]);
            u = (u + 1) % aux.size();
            return out;
        }

        const LmrmCode* code_;
        std::vector<uint8_t> img_;
        std::vector<uint64_t> pos_;
        std::optional<CompleteCursor> base_cursor_;
    };

    std::vector<Permutation> materialize(uint64_t limit = 1000000) const {
        if (size_ > limit) throw std::length_error("LmrmCode::materialize: size exceeds limit");
        std::vector<Permutation> out;
        out.reserve(static_cast<size_t>(size_));
        if (base_level_ == 0) {
            out.push_back(start_);
            return out;
        }
        Cursor cur(*this);
        for (uint64_t g = 0; g < size_; ++g) {
            out.push_back(cur.current_permutation());
            cur.step();
        }
        return out;
    }

private:
    Transition transition_rec(int level, uint64_t g) const {
        const int p = layout_.prefix[static_cast<size_t>(level)];
        if (level == base_level_) {
            if (tricycle_base_) return Transition::push_to_index(p + 1, p + 3);
            return Transition::push_to_index(p + 1, p + complete_transition_at(base_order_, g));
        }
        const AuxCode& aux = *aux_[static_cast<size_t>(level)];
        const uint64_t m = aux.size();
        const uint64_t u = (g - 1) % m;
        if (u == 0) {
            const Transition t = transition_rec(level + 1, (g - 1) / m + 1);
            return Transition::push_to_index(p + 1, t.j);
        }
        return Transition::push_to_index(p + 1, p + aux.transitions[static_cast<size_t>(u)]);
    }

    CodeParams params_;
    ClassLayout layout_;
    Permutation start_;
    uint64_t size_ = 1;
    int base_level_ = 0;       // tier whose block the base code permutes (0: trivial)
    bool tricycle_base_ = false;
    int base_order_ = 1;
    std::vector<std::shared_ptr<const AuxCode>> aux_;  // by level, 1..base_level-1
    std::vector<uint64_t> level_size_;
};

inline LmrmCode construct(const CodeParams& params, const AuxCatalog& catalog) {
    return LmrmCode(params, catalog);
}

// Exact code size from the per-class auxiliary sizes (matches the materialized
// count exactly; existence-bound constants are not used).
inline uint64_t size_formula(const CodeParams& params, const AuxCatalog& catalog) {
    const ClassLayout lay = class_layout(params);
    if (params.n == params.d) return 1;
    if (params.n < 2 * params.d) {
        uint64_t m = 1;
        for (int i = 0; i < params.n % params.d; ++i) m = checked_mul(m, 3);
        return m;
    }
    uint64_t m = factorial(lay.sizes[static_cast<size_t>(params.d)]);
    for (int lvl = 1; lvl < params.d; ++lvl)
        m = checked_mul(m, catalog.size_of(lay.sizes[static_cast<size_t>(lvl)] + 1, params.rankable));
    return m;
}

// The printed closed-form case constants for floor(n/d) in {1,2,3,4,5} (the
// larger cases are existence bounds and have no exact printed constant).
// Used as a cross-check against size_formula.
inline std::optional<uint64_t> size_formula_case_value(const CodeParams& params) {
    const int k = params.n / params.d, r = params.n % params.d, d = params.d;
    if (params.rankable) return std::nullopt;
    auto ipow = [](uint64_t b, int e) {
        uint64_t x = 1;
        for (int i = 0; i < e; ++i) x = checked_mul(x, b);
        return x;
    };
    switch (k) {
        case 1: return ipow(3, r);
        case 2: return checked_mul(checked_mul(ipow(8, r), ipow(3, d - 1 - r)), 2);
        case 3: return checked_mul(checked_mul(ipow(57, r), ipow(8, d - 1 - r)), 6);
        case 4: return checked_mul(checked_mul(ipow(178, r), ipow(57, d - 1 - r)), 24);
        case 5: return checked_mul(checked_mul(ipow(2520, r), ipow(178, d - 1 - r)), 120);
        default: return std::nullopt;
    }
}

// --- verification -----------------------------------------------------------

struct LmrmReport {
    bool pass = true;
    bool distinct_ok = true;
    bool gray_ok = true;
    bool cyclic_ok = true;
    uint64_t size = 0;
    int min_distance = -1;  // -1: not checked
    std::optional<std::pair<uint64_t, uint64_t>> violating_pair;
    std::string failure;

    void fail(std::string why) {
        if (pass) failure = std::move(why);
        pass = false;
    }
};

inline int min_pairwise_linf(const std::vector<Permutation>& code,
                             std::pair<uint64_t, uint64_t>* argmin = nullptr,
                             unsigned workers = std::thread::hardware_concurrency()) {
    const size_t m = code.size();
    if (m < 2) return -1;
    if (workers == 0) workers = 1;
    if (workers > 8) workers = 8;
    std::vector<int> best(workers, INT32_MAX);
    std::vector<std::pair<uint64_t, uint64_t>> arg(workers, {0, 0});
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (size_t i = w; i < m; i += workers) {
                for (size_t j = i + 1; j < m; ++j) {
                    const int dmin = dist_linf(code[i], code[j]);
                    if (dmin < best[w]) {
                        best[w] = dmin;
                        arg[w] = {i, j};
                    }
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    int out = INT32_MAX;
    std::pair<uint64_t, uint64_t> outArg{0, 0};
    for (unsigned w = 0; w < workers; ++w)
        if (best[w] < out) { out = best[w]; outArg = arg[w]; }
    if (argmin) *argmin = outArg;
    return out;
}

inline LmrmReport verify_materialized(const std::vector<Permutation>& code, int d,
                                      bool check_distance) {
    LmrmReport rep;
    rep.size = code.size();
    if (code.empty()) {
        rep.fail("empty code");
        return rep;
    }
    std::unordered_set<Permutation, PermutationHash> seen;
    for (const auto& p : code)
        if (!seen.insert(p).second) {
            rep.distinct_ok = false;
            rep.fail("duplicate codeword");
            break;
        }
    for (size_t i = 0; i + 1 < code.size(); ++i) {
        if (!push_to_top_step(code[i], code[i + 1])) {
            rep.gray_ok = false;
            rep.fail("non-push-to-the-top step at index " + std::to_string(i));
            break;
        }
    }
    if (code.size() > 1 && !push_to_top_step(code.back(), code.front())) {
        rep.cyclic_ok = false;
        rep.fail("sequence does not close cyclically");
    }
    if (check_distance && code.size() > 1) {
        std::pair<uint64_t, uint64_t> arg;
        rep.min_distance = min_pairwise_linf(code, &arg);
        if (rep.min_distance < d) {
            rep.violating_pair = arg;
            rep.fail("minimum distance " + std::to_string(rep.min_distance) + " < d");
        }
    }
    return rep;
}

inline LmrmReport verify_lmrm(const LmrmCode& code, bool check_distance,
                              uint64_t limit = 1000000) {
    return verify_materialized(code.materialize(limit), code.params().d, check_distance);
}

}  // namespace rankmod
