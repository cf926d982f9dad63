#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankmod {

// Permutations use vector notation throughout: the i-th entry (1-based) is
// sigma(i), with values in 1..n.  Values are stored as uint8_t, which caps
// the supported order at 64; materialized codes are further capped by the
// per-call codeword limits.
inline constexpr int kMaxOrder = 64;

class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<uint8_t> image) : img_(std::move(image)) {
        if (!is_valid_image(img_))
            throw std::invalid_argument("Permutation: image is not a bijection on [n]");
    }

    static Permutation identity(int n) {
        check_order(n);
        std::vector<uint8_t> v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = static_cast<uint8_t>(i + 1);
        return unchecked(std::move(v));
    }

    // Constructs without the bijection scan; debug builds still verify.
    static Permutation unchecked(std::vector<uint8_t> image) {
        Permutation p;
        p.img_ = std::move(image);
        assert(is_valid_image(p.img_));
        return p;
    }

    static bool is_valid_image(const std::vector<uint8_t>& v) {
        const size_t n = v.size();
        if (n == 0 || n > kMaxOrder) return false;
        uint64_t seen = 0;
        for (uint8_t x : v) {
            if (x < 1 || x > n) return false;
            const uint64_t bit = uint64_t{1} << (x - 1);
            if (seen & bit) return false;
            seen |= bit;
        }
        return true;
    }

    int size() const { return static_cast<int>(img_.size()); }

    // 1-based application: sigma(i).
    int operator()(int i) const {
        assert(i >= 1 && i <= size());
        return img_[static_cast<size_t>(i - 1)];
    }

    const std::vector<uint8_t>& image() const { return img_; }

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return img_ != o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (img_[static_cast<size_t>(i)] != i + 1) return false;
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(int(img_[static_cast<size_t>(i)]));
        }
        return s;
    }

    // Parses the space-separated 1-based textual format, e.g. "4 1 5 2 6 3".
    static std::optional<Permutation> parse(const std::string& line) {
        std::istringstream in(line);
        std::vector<uint8_t> v;
        long x;
        while (in >> x) {
            if (x < 1 || x > kMaxOrder) return std::nullopt;
            v.push_back(static_cast<uint8_t>(x));
        }
        if (!in.eof() || !is_valid_image(v)) return std::nullopt;
        return unchecked(std::move(v));
    }

private:
    static void check_order(int n) {
        if (n < 1 || n > kMaxOrder)
            throw std::invalid_argument("Permutation: order must be in 1..64");
    }

    std::vector<uint8_t> img_;
};

enum class Parity : uint8_t { even = 0, odd = 1 };

// (sigma tau)(k) = sigma(tau(k))
inline Permutation compose(const Permutation& sigma, const Permutation& tau) {
    if (sigma.size() != tau.size())
        throw std::invalid_argument("compose: dimension mismatch");
    const int n = sigma.size();
    std::vector<uint8_t> out(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k)
        out[static_cast<size_t>(k - 1)] = static_cast<uint8_t>(sigma(tau(k)));
    return Permutation::unchecked(std::move(out));
}

inline Permutation inverse(const Permutation& sigma) {
    const int n = sigma.size();
    std::vector<uint8_t> out(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        out[static_cast<size_t>(sigma(i) - 1)] = static_cast<uint8_t>(i);
    return Permutation::unchecked(std::move(out));
}

// Parity from the cycle decomposition, O(n).
inline Parity sign(const Permutation& sigma) {
    const int n = sigma.size();
    uint64_t seen = 0;
    int transpositions = 0;
    for (int i = 1; i <= n; ++i) {
        if (seen >> (i - 1) & 1) continue;
        int len = 0;
        for (int j = i; !(seen >> (j - 1) & 1); j = sigma(j)) {
            seen |= uint64_t{1} << (j - 1);
            ++len;
        }
        transpositions += len - 1;
    }
    return (transpositions & 1) ? Parity::odd : Parity::even;
}

inline bool is_even(const Permutation& sigma) { return sign(sigma) == Parity::even; }

// Left-multiplies by the transposition of values (a, b): swaps a and b in the
// vector notation.
inline Permutation swap_values(const Permutation& sigma, int a, int b) {
    std::vector<uint8_t> v = sigma.image();
    for (auto& x : v) {
        if (x == a) x = static_cast<uint8_t>(b);
        else if (x == b) x = static_cast<uint8_t>(a);
    }
    return Permutation::unchecked(std::move(v));
}

struct PermutationHash {
    size_t operator()(const Permutation& p) const {
        uint64_t h = 1469598103934665603ull;
        for (uint8_t x : p.image()) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

inline uint64_t checked_mul(uint64_t a, uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a)
        throw std::overflow_error("checked_mul: 64-bit overflow");
    return a * b;
}

inline uint64_t factorial(int n) {
    if (n < 0 || n > 20) throw std::overflow_error("factorial: n! exceeds 64 bits");
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
    return f;
}

}  // namespace rankmod
