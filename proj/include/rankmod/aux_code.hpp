#pragma once

#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rankmod/complete_code.hpp"
#include "rankmod/permutation.hpp"
#include "rankmod/phi_frame.hpp"
#include "rankmod/search.hpp"
#include "rankmod/transitions.hpp"

namespace rankmod {

// Auxiliary cyclic push-to-the-top codes over S_k with the blocking property
//   sigma in C  =>  (q,k) sigma not in C   for all q in [k-1],
// starting at id with first transition t_{^k}.  These are the per-class
// building blocks of the main construction.

enum class AuxFamily : uint8_t { trivial3, flip, searched_parity_preserving, stitched };

inline const char* aux_family_name(AuxFamily f) {
    switch (f) {
        case AuxFamily::trivial3: return "trivial3";
        case AuxFamily::flip: return "flip";
        case AuxFamily::searched_parity_preserving: return "searched";
        case AuxFamily::stitched: return "stitched";
    }
    return "?";
}

struct UnsupportedAuxOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class AuxCode {
public:
    int order = 0;
    AuxFamily family = AuxFamily::trivial3;
    std::vector<int> transitions;         // cyclic generating sequence, size M, first = order
    std::vector<Permutation> codewords;   // enumeration order, codewords[0] = id
    bool parity_preserving = false;

    uint64_t size() const { return codewords.size(); }

    // Exact membership in O(k) for the structured families; hash lookup for
    // the searched families.
    bool contains(const Permutation& pi) const {
        if (pi.size() != order) throw std::invalid_argument("AuxCode::contains: dimension mismatch");
        switch (family) {
            case AuxFamily::flip: {
                // in the flip code exactly when 1 cyclically follows k
                int pos_k = 0;
                for (int i = 1; i <= order; ++i)
                    if (pi(i) == order) { pos_k = i; break; }
                return pi(pos_k % order + 1) == 1;
            }
            case AuxFamily::trivial3:
            case AuxFamily::searched_parity_preserving:
                if (!is_even(pi)) return false;
                return member_set_.count(pi) > 0;
            case AuxFamily::stitched: {
                const int last = pi(order);
                const auto& sc = stitched_;
                if (last == order) return sc.p0_set.count(pi) > 0;
                if (last == order - 3 || last == order - 1) return sc.bridge_set.count(pi) > 0;
                if (!is_even(pi)) return false;
                const auto it = sc.block_missing.find(last);
                if (it == sc.block_missing.end()) return false;
                return it->second.count(pi) == 0;
            }
        }
        return false;
    }

    bool has_rank_support() const {
        return family == AuxFamily::trivial3 || family == AuxFamily::flip ||
               (family == AuxFamily::searched_parity_preserving && !rank_table_.empty());
    }

    // 0-based position in the enumeration order; std::nullopt when pi is not a
    // codeword.  O(k^2) for the flip family (complete-code descent), table
    // lookup for searched codes.
    std::optional<uint64_t> rank_of(const Permutation& pi) const {
        if (pi.size() != order) return std::nullopt;
        if (!contains(pi)) return std::nullopt;
        switch (family) {
            case AuxFamily::trivial3:
                return static_cast<uint64_t>((1 - pi(1) + 3) % 3);
            case AuxFamily::flip:
                return flip_rank(pi);
            default: {
                const auto it = rank_table_.find(pi);
                if (it == rank_table_.end()) return std::nullopt;
                return it->second;
            }
        }
    }

    Permutation unrank(uint64_t m) const {
        if (m >= size()) throw std::out_of_range("AuxCode::unrank: rank out of range");
        if (family == AuxFamily::flip) return flip_unrank(m);
        return codewords[static_cast<size_t>(m)];
    }

    // --- constructions ---------------------------------------------------

    // {id, t_{^3} id, t_{^3}^2 id}
    static AuxCode trivial3() {
        AuxCode c;
        c.order = 3;
        c.family = AuxFamily::trivial3;
        c.transitions = {3, 3, 3};
        c.codewords = materialize_from_transitions(Permutation::identity(3), c.transitions);
        c.parity_preserving = true;
        c.finish();
        return c;
    }

    // Rotation-class code of size k!/(k-1), built by expanding the complete
    // code two orders down through push-to-bottom anchors and shifting the
    // result to start at id.
    static AuxCode flip(int k, uint64_t limit = 1000000) {
        if (k < 4 || k % 2 != 0)
            throw std::invalid_argument("AuxCode::flip: order must be even and >= 4");
        const uint64_t m = factorial(k) / static_cast<uint64_t>(k - 1);
        if (m > limit) throw std::length_error("AuxCode::flip: size exceeds limit");
        AuxCode c;
        c.order = k;
        c.family = AuxFamily::flip;
        // expanded transitions applied from sigma0 = t_{^k}(id)
        std::vector<int> trans;
        trans.reserve(static_cast<size_t>(m));
        CompleteCursor base(k - 2);
        const uint64_t base_len = factorial(k - 2);
        for (uint64_t r = 0; r < base_len; ++r) {
            trans.push_back(k + 1 - base.step());
            for (int t = 0; t < k - 1; ++t) trans.push_back(k);
        }
        const Permutation sigma0 = push_to_top(Permutation::identity(k), k);
        std::vector<Permutation> seq = materialize_from_transitions(sigma0, trans);
        // rotate so the sequence starts at id
        size_t id_at = 0;
        for (size_t i = 0; i < seq.size(); ++i)
            if (seq[i].is_identity()) { id_at = i; break; }
        std::rotate(seq.begin(), seq.begin() + static_cast<long>(id_at), seq.end());
        std::rotate(trans.begin(), trans.begin() + static_cast<long>(id_at), trans.end());
        c.transitions = std::move(trans);
        c.codewords = std::move(seq);
        c.parity_preserving = false;
        c.finish();
        return c;
    }

    // Deterministically searched parity-preserving code (order 3 or 5 by
    // default; larger odd orders only via certificates).
    static AuxCode searched(int k, uint64_t budget = default_search_budget()) {
        if (k == 3) return trivial3();
        if (k != 5)
            throw UnsupportedAuxOrder("searched aux codes are guaranteed only for order <= 5");
        SearchConstraints cs;
        cs.must_use = {3};
        SearchOutcome r = search_parity_preserving(5, 57, cs, budget);
        if (!r.found)
            throw std::runtime_error(r.budget_exhausted ? "order-5 search: budget exhausted"
                                                        : "order-5 search: no code found");
        AuxCode c;
        c.order = 5;
        c.family = AuxFamily::searched_parity_preserving;
        c.transitions = std::move(r.transitions);
        c.codewords = std::move(r.codewords);
        c.parity_preserving = true;
        c.finish();
        return c;
    }

    // Stitched code on even order k = 2m+2 >= 6: P_0' and 2m-1 translated
    // copies of an odd-order parity-preserving block, joined by bridges, then
    // left-translated to start at id with a t_{^k} transition.
    static AuxCode stitched(int k, const AuxCode& odd_block) {
        if (k < 6 || k % 2 != 0)
            throw std::invalid_argument("AuxCode::stitched: order must be even and >= 6");
        const int m = (k - 2) / 2;
        if (odd_block.order != 2 * m + 1 || !odd_block.parity_preserving)
            throw std::invalid_argument("AuxCode::stitched: block must be parity-preserving of order k-1");
        // the block must employ t_{^(2m-1)}; rotate its sequence to end with it
        std::vector<int> w = odd_block.transitions;
        size_t cut = 0;
        bool found = false;
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] == 2 * m - 1) { cut = i + 1; found = true; break; }
        if (!found)
            throw std::invalid_argument("AuxCode::stitched: block never uses t_{^(2m-1)}");
        std::rotate(w.begin(), w.begin() + static_cast<long>(cut), w.end());
        if (w.back() != 2 * m - 1)
            throw std::logic_error("AuxCode::stitched: rotation failed");

        const PhiFrame frame(m);
        std::vector<Permutation> seq;
        std::vector<int> trans;
        // P_0' = pi_hat_0, t_{^(2m-1)} pi_hat_0, ..., t^{2m-2} pi_hat_0
        Permutation cur = frame.pi_hat[0];
        for (int t = 0; t < 2 * m - 1; ++t) {
            seq.push_back(cur);
            trans.push_back(t + 1 < 2 * m - 1 ? 2 * m - 1 : 0);  // placeholder for last
            if (t + 1 < 2 * m - 1) cur = push_to_top(cur, 2 * m - 1);
        }
        trans.back() = k;  // exit P_0' toward the first bridge
        // bridges and blocks
        for (int r = 1; r <= 2 * m - 1; ++r) {
            seq.push_back(frame.bridges[static_cast<size_t>(r - 1)]);
            trans.push_back(k);
            // P_r: apply rotated block sequence from pi_hat_r (embedding acts on
            // the first 2m+1 positions)
            Permutation p = frame.pi_hat[static_cast<size_t>(r)];
            for (size_t t = 0; t < w.size(); ++t) {
                seq.push_back(p);
                if (t + 1 < w.size()) {
                    trans.push_back(w[t]);
                    p = push_to_top(p, w[t]);
                } else {
                    trans.push_back(k);  // leave the block toward the next bridge
                }
            }
        }
        seq.push_back(frame.bridges[static_cast<size_t>(2 * m - 1)]);  // beta_{2m}
        trans.push_back(k);  // wraps to pi_hat_0 = start of P_0'

        // left-translate by the inverse of P_0's last permutation and restart at id
        const Permutation pit = push_to_top_inverse(frame.pi_hat[0], 2 * m - 1);
        const Permutation pit_inv = inverse(pit);
        for (auto& p : seq) p = compose(pit_inv, p);
        size_t id_at = 0;
        for (size_t i = 0; i < seq.size(); ++i)
            if (seq[i].is_identity()) { id_at = i; break; }
        std::rotate(seq.begin(), seq.begin() + static_cast<long>(id_at), seq.end());
        std::rotate(trans.begin(), trans.begin() + static_cast<long>(id_at), trans.end());

        AuxCode c;
        c.order = k;
        c.family = AuxFamily::stitched;
        c.codewords = std::move(seq);
        c.transitions = std::move(trans);
        c.parity_preserving = false;
        // structured membership data: translated P_0' and bridges by hash, and
        // per-last-value missing sets for the block cosets
        c.stitched_.p0_set.clear();
        for (const auto& p : c.codewords)
            if (p(k) == k) c.stitched_.p0_set.insert(p);
        for (const auto& p : c.codewords) {
            const int last = p(k);
            if (last == k - 3 || last == k - 1) c.stitched_.bridge_set.insert(p);
        }
        // block last values after translation: {k-2} and {1..k-4}
        std::vector<int> block_lasts{k - 2};
        for (int v = 1; v <= k - 4; ++v) block_lasts.push_back(v);
        std::unordered_set<Permutation, PermutationHash> present;
        for (const auto& p : c.codewords) present.insert(p);
        for (int v : block_lasts) {
            auto& missing = c.stitched_.block_missing[v];
            // enumerate the even permutations with last element v that are absent
            std::vector<uint8_t> rest;
            for (int x = 1; x <= k; ++x)
                if (x != v) rest.push_back(static_cast<uint8_t>(x));
            std::sort(rest.begin(), rest.end());
            do {
                std::vector<uint8_t> img(rest.begin(), rest.end());
                img.push_back(static_cast<uint8_t>(v));
                Permutation p = Permutation::unchecked(std::move(img));
                if (is_even(p) && present.count(p) == 0) missing.insert(p);
            } while (std::next_permutation(rest.begin(), rest.end()));
        }
        c.finish();
        return c;
    }

    // Reconstructs a code from a certificate transition sequence; the caller
    // is expected to run verify_aux on the result.
    static AuxCode from_transitions(int k, std::vector<int> transitions, AuxFamily family) {
        AuxCode c;
        c.order = k;
        c.family = family;
        c.codewords = materialize_from_transitions(Permutation::identity(k), transitions);
        c.transitions = std::move(transitions);
        c.parity_preserving = true;
        for (const auto& p : c.codewords)
            if (!is_even(p)) { c.parity_preserving = false; break; }
        c.finish();
        return c;
    }

    static std::vector<Permutation> materialize_from_transitions(const Permutation& start,
                                                                 const std::vector<int>& trans) {
        std::vector<Permutation> seq;
        seq.reserve(trans.size());
        Permutation cur = start;
        for (size_t i = 0; i < trans.size(); ++i) {
            seq.push_back(cur);
            if (i + 1 < trans.size()) cur = push_to_top(cur, trans[i]);
        }
        return seq;
    }

private:
    struct StitchedSets {
        std::unordered_set<Permutation, PermutationHash> p0_set;
        std::unordered_set<Permutation, PermutationHash> bridge_set;
        std::map<int, std::unordered_set<Permutation, PermutationHash>> block_missing;
    };

    void finish() {
        if (family == AuxFamily::trivial3 || family == AuxFamily::searched_parity_preserving) {
            member_set_.clear();
            rank_table_.clear();
            for (size_t i = 0; i < codewords.size(); ++i) {
                member_set_.insert(codewords[i]);
                rank_table_.emplace(codewords[i], static_cast<uint64_t>(i));
            }
        }
    }

    // Flip-family structural rank.  Every codeword is a rotation of an anchor
    // beginning [k, 1]; the anchor's reversed complemented tail is ranked in
    // the complete code two orders down.
    std::optional<uint64_t> flip_rank(const Permutation& pi) const {
        const int k = order;
        int pos_k = 0;
        for (int i = 1; i <= k; ++i)
            if (pi(i) == k) { pos_k = i; break; }
        const int u = (pos_k == 1) ? k : pos_k - 1;
        std::vector<uint8_t> anchor = pi.image();
        for (int t = 0; t < k - u; ++t) apply_push_to_index(anchor, 1, k);
        if (anchor[0] != k || anchor[1] != 1) return std::nullopt;
        std::vector<uint8_t> parent(static_cast<size_t>(k - 2));
        for (int j = 1; j <= k - 2; ++j)
            parent[static_cast<size_t>(j - 1)] =
                static_cast<uint8_t>(k - anchor[static_cast<size_t>(k - 1 - j + 1)]);
        const uint64_t r = rank_complete(Permutation::unchecked(std::move(parent)));
        const uint64_t f = factorial(k - 2);
        const uint64_t rb = (r + f - 1) % f + 1;
        const uint64_t gp = (rb - 1) * static_cast<uint64_t>(k) + static_cast<uint64_t>(u);
        return (gp + 1) % (f * static_cast<uint64_t>(k));
    }

    Permutation flip_unrank(uint64_t m) const {
        const int k = order;
        const uint64_t total = size();
        const uint64_t gp = (m + total - 1) % total;  // pre-shift index
        const uint64_t f = factorial(k - 2);
        uint64_t rb;
        int u;
        if (gp == 0) {
            rb = 0;
            u = k;
        } else {
            rb = (gp - 1) / static_cast<uint64_t>(k) + 1;
            u = static_cast<int>((gp - 1) % static_cast<uint64_t>(k)) + 1;
        }
        const Permutation parent = unrank_complete(k - 2, rb % f);
        std::vector<uint8_t> anchor(static_cast<size_t>(k));
        anchor[0] = static_cast<uint8_t>(k);
        anchor[1] = 1;
        // anchor tail: x(q) = k - parent(k-1-q), q = 1..k-2
        for (int q = 1; q <= k - 2; ++q)
            anchor[static_cast<size_t>(q + 1)] = static_cast<uint8_t>(k - parent(k - 1 - q));
        for (int t = 0; t < u % k; ++t) apply_push_to_index(anchor, 1, k);
        return Permutation::unchecked(std::move(anchor));
    }

    std::unordered_set<Permutation, PermutationHash> member_set_;
    std::unordered_map<Permutation, uint64_t, PermutationHash> rank_table_;
    StitchedSets stitched_;
};

// --- verification ---------------------------------------------------------

struct AuxReport {
    bool pass = true;
    std::string failure;
    std::optional<Permutation> witness;
    std::optional<int> witness_q;

    void fail(std::string why) {
        if (pass) failure = std::move(why);
        pass = false;
    }
};

inline AuxReport verify_aux(const AuxCode& c) {
    AuxReport rep;
    const int k = c.order;
    if (c.codewords.empty()) {
        rep.fail("empty code");
        return rep;
    }
    if (!c.codewords.front().is_identity()) rep.fail("does not start at id");
    if (c.transitions.size() != c.codewords.size()) rep.fail("transition count != codeword count");
    if (!c.transitions.empty() && c.transitions.front() != k) rep.fail("first transition is not t_{^k}");
    // distinctness
    std::unordered_set<Permutation, PermutationHash> seen;
    for (const auto& p : c.codewords) {
        if (!seen.insert(p).second) {
            rep.fail("duplicate codeword");
            rep.witness = p;
            break;
        }
    }
    // cyclic Gray property
    for (size_t i = 0; i < c.codewords.size() && rep.pass; ++i) {
        const auto& a = c.codewords[i];
        const auto& b = c.codewords[(i + 1) % c.codewords.size()];
        const auto j = push_to_top_step(a, b);
        if (!j || (i < c.transitions.size() && *j != c.transitions[i])) {
            rep.fail("consecutive codewords not related by the declared push-to-the-top");
            rep.witness = a;
        }
    }
    // size bound M <= k!/2
    if (c.size() > factorial(k) / 2) rep.fail("size exceeds k!/2");
    // blocking property
    for (const auto& p : c.codewords) {
        if (!rep.pass) break;
        for (int q = 1; q < k; ++q) {
            if (seen.count(swap_values(p, q, k))) {
                rep.fail("aux property violated");
                rep.witness = p;
                rep.witness_q = q;
                break;
            }
        }
    }
    // membership rule agrees with the materialized set
    for (const auto& p : c.codewords) {
        if (!rep.pass) break;
        if (!c.contains(p)) {
            rep.fail("membership rule rejects a codeword");
            rep.witness = p;
        }
    }
    return rep;
}

// --- catalog ---------------------------------------------------------------

// Dispatches aux-code construction by order and rankability, with caching and
// a registry for externally supplied certificates (odd orders >= 7 and the
// stitched blocks above order 6 have no in-tree construction).
class AuxCatalog {
public:
    explicit AuxCatalog(uint64_t budget = default_search_budget()) : budget_(budget) {}

    void register_certificate(std::shared_ptr<const AuxCode> code) {
        if (!code) return;
        certificates_[code->order] = std::move(code);
    }

    bool has_certificate(int order) const { return certificates_.count(order) > 0; }

    std::shared_ptr<const AuxCode> get(int order, bool rankable) const {
        const auto key = std::make_pair(order, rankable);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::shared_ptr<const AuxCode> code = build(order, rankable);
        cache_.emplace(key, code);
        return code;
    }

    uint64_t size_of(int order, bool rankable) const { return get(order, rankable)->size(); }

private:
    std::shared_ptr<const AuxCode> build(int order, bool rankable) const {
        if (order < 3) throw UnsupportedAuxOrder("aux codes start at order 3");
        if (order == 3) return std::make_shared<AuxCode>(AuxCode::trivial3());
        if (order == 4) return std::make_shared<AuxCode>(AuxCode::flip(4));
        if (order == 5) return std::make_shared<AuxCode>(AuxCode::searched(5, budget_));
        if (order % 2 == 1) {
            auto it = certificates_.find(order);
            if (it == certificates_.end())
                throw UnsupportedAuxOrder("odd aux order " + std::to_string(order) +
                                          " requires a certificate");
            return it->second;
        }
        // even order >= 6
        if (rankable) return std::make_shared<AuxCode>(AuxCode::flip(order));
        if (order == 6) {
            const AuxCode block = AuxCode::searched(5, budget_);
            return std::make_shared<AuxCode>(AuxCode::stitched(6, block));
        }
        if (auto it = certificates_.find(order - 1); it != certificates_.end()) {
            try {
                return std::make_shared<AuxCode>(AuxCode::stitched(order, *it->second));
            } catch (const std::invalid_argument&) {
                // certificate unusable as a stitching block; fall through
            }
        }
        return std::make_shared<AuxCode>(AuxCode::flip(order));
    }

    uint64_t budget_;
    mutable std::map<std::pair<int, bool>, std::shared_ptr<const AuxCode>> cache_;
    std::map<int, std::shared_ptr<const AuxCode>> certificates_;
};

}  // namespace rankmod
