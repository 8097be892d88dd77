#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace itrail {

// log C(n, k) via log-gamma.
inline double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// A quantity carried in log space, with the direct value alongside whenever
// it fits in a double.
struct LogValue {
    double log_value;
    double value;  // exp(log_value); +inf when not representable

    bool representable() const { return std::isfinite(value); }

    static LogValue from_log(double lv) { return {lv, std::exp(lv)}; }
    static LogValue zero() { return {-std::numeric_limits<double>::infinity(), 0.0}; }
};

struct RegimeQuery {
    std::uint64_t n = 0;
    double p = 0.0;
    std::uint32_t k = 1;
    double eps = 0.0;

    void validate() const {
        if (n < 1) throw std::invalid_argument("RegimeQuery: n must be at least 1");
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("RegimeQuery: p must lie in [0,1]");
        if (k < 1) throw std::invalid_argument("RegimeQuery: k must be at least 1");
    }
};

// Expected number of increasing k-edge paths in G(n,p) under a uniform random
// edge ordering: C(n, k+1) * (k+1)! * p^k / k!. Zero when k > n-1.
inline LogValue expected_increasing_paths(const RegimeQuery& q) {
    q.validate();
    if (q.k > q.n - 1) return LogValue::zero();
    if (q.p == 0.0) return LogValue::zero();
    double lv = log_binomial(static_cast<double>(q.n), static_cast<double>(q.k) + 1) +
                std::lgamma(static_cast<double>(q.k) + 2) - std::lgamma(static_cast<double>(q.k) + 1) +
                q.k * std::log(q.p);
    return LogValue::from_log(lv);
}

// Upper bound on the expected number of increasing k-edge trails in G(n,p):
// n^(k+1) * p^k / k!.
inline LogValue expected_increasing_trails_upper(const RegimeQuery& q) {
    q.validate();
    if (q.p == 0.0) return LogValue::zero();
    double lv = (static_cast<double>(q.k) + 1) * std::log(static_cast<double>(q.n)) +
                q.k * std::log(q.p) - std::lgamma(static_cast<double>(q.k) + 1);
    return LogValue::from_log(lv);
}

// First-moment ceiling for the longest increasing trail: (1 + eps) * e * n * p.
// Natural logarithm conventions throughout.
inline double trail_threshold(std::uint64_t n, double p, double eps) {
    return (1.0 + eps) * std::exp(1.0) * static_cast<double>(n) * p;
}

// Longest-trail scale in the very sparse regime: ln n / ln ln n.
inline double sparse_threshold(std::uint64_t n) {
    if (n < 3) throw std::invalid_argument("sparse_threshold: n must be at least 3");
    double ln_n = std::log(static_cast<double>(n));
    return ln_n / std::log(ln_n);
}

}  // namespace itrail
