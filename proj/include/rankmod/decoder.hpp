#pragma once

#include <string>
#include <vector>

#include "rankmod/lmrm_code.hpp"

namespace rankmod {

// Window-by-window bounded-magnitude decoder.  Each window is quantized to
// its congruence class, the unique duplicated value exposes the two candidate
// positions of the threaded element, and the per-class auxiliary membership
// test picks the right one.  Runs in O(n) with O(k)-time membership tests.
//
// Correct whenever some codeword sigma satisfies d_inf(sigma, tau) <= t with
// decoding radius t = floor((d-1)/2).  Outside the radius the decoder is
// best-effort and reports structural failures.

// Nearest integer congruent to j modulo d (ties toward the smaller value).
// This is the unrestricted quantizer; decoding restricts to [1, n].
inline int quantize(int a, int j, int d) {
    if (d < 2 || j < 1 || j > d) throw std::invalid_argument("quantize: need d >= 2, 1 <= j <= d");
    const int diff = a - j;
    const int q = diff >= 0 ? diff / d : -((-diff + d - 1) / d);
    const int lo = j + d * q;
    const int hi = lo + d;
    return (a - lo) <= (hi - a) ? lo : hi;
}

// Same, clamped to the congruence class within [1, n].  The duplicate
// structure of the naive decode (and hence the in-radius guarantee) holds for
// this variant: every quantized value lands in R_j, whose other k values the
// window already carries.
inline int quantize_in_range(int a, int j, int d, int n) {
    int b = quantize(a, j, d);
    const int top = j + d * ((n - j) / d);
    if (b < j) b = j;
    if (b > top) b = top;
    return b;
}

struct DecodeFailure {
    enum class Reason : uint8_t {
        unsupported_params,   // n < 2d, reordered classes, dimension mismatch
        window_structure,     // duplicate structure of a window broke down
        not_a_permutation,    // assembled output is not a permutation
    };
    Reason reason = Reason::window_structure;
    int window = 0;
    std::string detail;
};

class Decoder {
public:
    explicit Decoder(const LmrmCode& code) : code_(&code) {
        const CodeParams& p = code.params();
        supported_ = p.n >= 2 * p.d && !p.odd_class_last;
        if (!supported_) return;
        const ClassLayout& lay = code.layout();
        alpha_.assign(static_cast<size_t>(p.n) + 1, 0);
        alpha_class_.assign(static_cast<size_t>(p.n) + 1, 0);
        const Permutation s0 = code.start();
        for (int m = 1; m <= p.d; ++m) {
            for (int pos = 1; pos <= lay.sizes[static_cast<size_t>(m)]; ++pos) {
                const int value = s0(lay.prefix[static_cast<size_t>(m)] + pos);
                alpha_[static_cast<size_t>(value)] = pos;
                alpha_class_[static_cast<size_t>(value)] = m;
            }
        }
    }

    bool supported() const { return supported_; }

    std::optional<Permutation> decode(const Permutation& received,
                                      DecodeFailure* failure = nullptr) const {
        const CodeParams& p = code_->params();
        auto fail = [&](DecodeFailure::Reason r, int window, std::string why) {
            if (failure) *failure = {r, window, std::move(why)};
            return std::nullopt;
        };
        if (!supported_)
            return fail(DecodeFailure::Reason::unsupported_params, 0,
                        "decoder requires n >= 2d and the default class order");
        if (received.size() != p.n)
            return fail(DecodeFailure::Reason::unsupported_params, 0, "dimension mismatch");

        const ClassLayout& lay = code_->layout();
        const int n = p.n, d = p.d;
        std::vector<int> out(static_cast<size_t>(n) + 1, 0);
        int carry = 1;  // position of the not-yet-final element
        for (int j = 1; j < d; ++j) {
            const int k = lay.sizes[static_cast<size_t>(j)];
            const int base = lay.prefix[static_cast<size_t>(j)];
            const AuxCode& aux = *code_->aux_at_level(j);
            std::vector<uint8_t> pi(static_cast<size_t>(k) + 1, 0);
            std::vector<int> first_pos(static_cast<size_t>(k) + 1, 0);  // by alpha value
            int dup_alpha = 0;

            auto set_entry = [&](int pi_index, int position) -> bool {
                const int v = quantize_in_range(received(position), j, d, n);
                out[static_cast<size_t>(position)] = v;
                const int a = (alpha_class_[static_cast<size_t>(v)] == j)
                                  ? alpha_[static_cast<size_t>(v)]
                                  : 0;
                if (a == 0) return false;  // cannot happen for in-range residues
                if (first_pos[static_cast<size_t>(a)] != 0) {
                    if (dup_alpha != 0) return false;  // more than one duplicate
                    dup_alpha = a;
                    pi[static_cast<size_t>(pi_index - 1)] = static_cast<uint8_t>(k + 1);
                } else {
                    first_pos[static_cast<size_t>(a)] = pi_index;
                    pi[static_cast<size_t>(pi_index - 1)] = static_cast<uint8_t>(a);
                }
                return true;
            };

            if (!set_entry(1, carry))
                return fail(DecodeFailure::Reason::window_structure, j, "carry quantization broke");
            for (int r = 2; r <= k + 1; ++r)
                if (!set_entry(r, base + r))
                    return fail(DecodeFailure::Reason::window_structure, j,
                                "window has an unexpected duplicate structure");
            if (dup_alpha == 0)
                return fail(DecodeFailure::Reason::window_structure, j, "window has no duplicate");

            const Permutation pi_hat = Permutation::unchecked(pi);
            int chosen;
            if (aux.contains(pi_hat)) {
                // the later duplicate really is the threaded element
                for (chosen = 1; chosen <= k + 1; ++chosen)
                    if (pi_hat(chosen) == k + 1) break;
            } else {
                chosen = first_pos[static_cast<size_t>(dup_alpha)];
            }
            carry = (chosen == 1) ? carry : base + chosen;
        }
        // final window: quantization alone
        {
            const int base = lay.prefix[static_cast<size_t>(d)];
            out[static_cast<size_t>(carry)] = quantize_in_range(received(carry), d, d, n);
            for (int r = 2; r <= lay.sizes[static_cast<size_t>(d)]; ++r)
                out[static_cast<size_t>(base + r)] = quantize_in_range(received(base + r), d, d, n);
        }
        std::vector<uint8_t> img(static_cast<size_t>(n));
        for (int i = 1; i <= n; ++i) img[static_cast<size_t>(i - 1)] = static_cast<uint8_t>(out[static_cast<size_t>(i)]);
        if (!Permutation::is_valid_image(img))
            return fail(DecodeFailure::Reason::not_a_permutation, d, "assembled output is not a permutation");
        return Permutation::unchecked(std::move(img));
    }

    int decoding_radius() const { return (code_->params().d - 1) / 2; }

private:
    const LmrmCode* code_;
    bool supported_ = false;
    std::vector<int> alpha_;        // value -> position within its class block
    std::vector<int> alpha_class_;  // value -> class (= residue level)
};

}  // namespace rankmod
