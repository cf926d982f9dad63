#pragma once

#include <cmath>
#include <ostream>
#include <vector>

namespace rankmod {

// Asymptotic rate curves as functions of the normalized distance
// delta = d/n (o(1) terms dropped).  R = (1/n) log2 M.

namespace detail {
inline double log2_factorial(double k) { return std::lgamma(k + 1.0) / std::log(2.0); }
}  // namespace detail

// Ball-packing upper bound for any code at normalized distance delta.
inline double rate_upper(double delta) {
    if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("rate_upper: delta in (0,1]");
    const double fl = std::floor(1.0 / delta);
    const double a = 1.0 + delta - delta * fl;
    return 2.0 - 2.0 * delta * fl - (delta * fl - delta) * std::log2(delta) - a * std::log2(a);
}

// Rate of the fixed-partition construction (the prior state of the art).
inline double rate_partition(double delta) {
    if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("rate_partition: delta in (0,1]");
    const double fl = std::floor(1.0 / delta);
    const double ce = std::ceil(1.0 / delta);
    return (1.0 - delta * fl) * detail::log2_factorial(ce) +
           (delta + delta * fl - 1.0) * detail::log2_factorial(fl);
}

// Gilbert-Varshamov-style existence bound.
inline double rate_gv(double delta) {
    if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("rate_gv: delta in (0,1]");
    const double log2e = 1.0 / std::log(2.0);
    if (delta <= 0.5) return std::log2(1.0 / delta) + 2.0 * delta * (log2e - 1.0) - 1.0;
    return -2.0 * delta * std::log2(1.0 / delta) + 2.0 * (1.0 - delta) * log2e;
}

// Lower bound on the rate of the tiered Gray-code construction.
inline double rate_construction(double delta) {
    if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("rate_construction: delta in (0,1]");
    const double fl = std::floor(1.0 / delta);
    const double ce = std::ceil(1.0 / delta);
    const long k = static_cast<long>(fl);
    switch (k) {
        case 1: return (1.0 - delta) * std::log2(3.0);
        case 2: return (1.0 - 2.0 * delta) * (3.0 - std::log2(3.0)) + delta * std::log2(3.0);
        case 3: return (1.0 - 3.0 * delta) * (std::log2(57.0) - 4.0) + 1.0;
        case 4: return (1.0 - 4.0 * delta) * std::log2(178.0) + (5.0 * delta - 1.0) * std::log2(57.0);
        case 5:
            return (1.0 - 5.0 * delta) * std::log2(315.0) + (6.0 * delta - 1.0) * std::log2(89.0) +
                   2.0 - 9.0 * delta;
        default:
            break;
    }
    const double common = (1.0 - delta * fl) * std::log2(ce + 1.0) +
                          delta * detail::log2_factorial(fl + 1.0) - delta;
    if (k % 2 == 0)
        return common + (1.0 - delta * fl) * std::log2((ce - 2.0) / (ce + 1.0));
    return common + (delta + delta * fl - 1.0) * std::log2((fl - 2.0) / (fl + 1.0));
}

// Lower bound for the rankable variant (flip-family auxiliaries on even
// orders, Stirling-estimated parity-preserving sizes on odd orders).  At
// floor(1/delta) = 1 the rankable and plain constructions coincide.
inline double rate_rankable(double delta) {
    if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("rate_rankable: delta in (0,1]");
    const double fl = std::floor(1.0 / delta);
    const double ce = std::ceil(1.0 / delta);
    const long k = static_cast<long>(fl);
    if (k == 1) return (1.0 - delta) * std::log2(3.0);
    const double log2e = 1.0 / std::log(2.0);
    const double log2pi = std::log2(std::acos(-1.0));
    if (k % 2 == 0) {
        return (1.0 - delta * fl) *
                   (detail::log2_factorial(ce) + std::log2(1.0 + 1.0 / ce)) +
               (delta + delta * fl - 1.0) * detail::log2_factorial(fl + 1.0) -
               0.5 * (delta + delta * fl - 1.0) *
                   (std::log2(fl) + log2e / (2.0 * fl) + log2pi - 1.0);
    }
    return (1.0 - delta * fl) * detail::log2_factorial(ce + 1.0) +
           (delta + delta * fl - 1.0) *
               (detail::log2_factorial(fl) + std::log2(1.0 + 1.0 / fl)) -
           0.5 * (1.0 - delta * fl) * (std::log2(ce) + log2e / (2.0 * ce) + log2pi - 1.0);
}

struct RateRow {
    double delta;
    double upper;
    double partition;
    double gv;
    double construction;
    double rankable;
};

inline std::vector<RateRow> rate_table(double from, double to, double step) {
    if (!(from > 0.0) || !(to <= 1.0) || !(step > 0.0) || from > to)
        throw std::invalid_argument("rate_table: need 0 < from <= to <= 1 and step > 0");
    std::vector<RateRow> rows;
    for (int i = 0;; ++i) {
        const double delta = from + step * i;
        if (delta > to + 1e-12) break;
        const double d = std::min(delta, 1.0);
        rows.push_back({d, rate_upper(d), rate_partition(d), rate_gv(d), rate_construction(d),
                        rate_rankable(d)});
    }
    return rows;
}

inline void write_rate_csv(std::ostream& out, const std::vector<RateRow>& rows) {
    out << "delta,upper,tam,gv,eq2,rankable\n";
    out.precision(12);
    for (const auto& r : rows)
        out << r.delta << ',' << r.upper << ',' << r.partition << ',' << r.gv << ','
            << r.construction << ',' << r.rankable << '\n';
}

}  // namespace rankmod
