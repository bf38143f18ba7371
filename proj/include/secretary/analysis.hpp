#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secretary/core.hpp"
#include "secretary/policies.hpp"

namespace secretary {

double harmonic(std::int64_t k);
// H_b - H_a for 0 <= a <= b, summed directly over (a, b] where that is cheap.
double harmonic_diff(std::int64_t a, std::int64_t b);

// (m/k)(H_{k-1} - H_{m-1}): exact success probability of the m-threshold rule under uniform order.
double success_formula_f(std::int64_t k, std::int64_t m);

struct Threshold {
    std::int64_t m_star = 1;
    double value = 0.0;
    bool near_n_over_e = true;  // m_star in {floor(n/e), floor(n/e)+1}
};

// Binary search on the sign change of h(m) = (H_{n-1} - H_m - 1)/n.
Threshold best_threshold(std::int64_t n);
// Linear scan of f(n, .) for cross-checking.
Threshold best_threshold_scan(std::int64_t n);

inline constexpr double kE = 2.718281828459045235360287;
inline constexpr double kC0 = 0.5 - 1.0 / (2.0 * kE);

struct OptExpansion {
    double opt_exact = 0.0;
    double approx = 0.0;
    double residual = 0.0;
};
OptExpansion opt_expansion(std::int64_t n);

struct RhoBound {
    double value = 0.0;
    bool vacuous = false;  // value <= 0
};

RhoBound rho_single(std::int64_t n, std::int64_t m0, int k);
RhoBound rho_multi(std::int64_t n, std::int64_t m, int k);

inline constexpr int kWorstCaseMaxN = 9;

// min over all n! rank orders of Pr_{pi ~ dist}[run_single succeeds]. n <= 9.
double worst_case_success(const OrderDistribution& dist, const SinglePolicy& policy);
// Same for every m0 in [1, n-1] in one sweep; entry m0-1.
std::vector<double> worst_case_success_all(const OrderDistribution& dist);
std::vector<double> worst_case_success_all_serial(const OrderDistribution& dist);

enum class EvalMode { exact, monte_carlo };

struct EvalReport {
    double mean = 0.0;
    double half_width_95 = 0.0;  // NaN when samples == 1
    std::int64_t samples = 0;
    EvalMode mode = EvalMode::exact;
};

// Uniform random orders. Single: success frequency. Multi: mean of total / top-k sum.
EvalReport mc_estimate(const SinglePolicy& policy, const ValueAssignment& values, std::int64_t n_samples,
                       std::uint64_t seed);
EvalReport mc_estimate(const MultiPolicy& policy, const ValueAssignment& values, std::int64_t n_samples,
                       std::uint64_t seed);
EvalReport mc_estimate_serial(const SinglePolicy& policy, const ValueAssignment& values, std::int64_t n_samples,
                              std::uint64_t seed);

// Exact success probability / ratio over the support of dist.
EvalReport exact_evaluate(const OrderDistribution& dist, const ValueAssignment& values, const SinglePolicy& policy);
EvalReport exact_evaluate(const OrderDistribution& dist, const ValueAssignment& values, const MultiPolicy& policy);

struct TailReport {
    double empirical_tail = 0.0;
    double bound = 0.0;
    double mu = 0.0;
    double sigma = 0.0;  // binomial standard error of empirical_tail under p = bound (capped at 1)
    std::int64_t samples = 0;
};

// X = #{elements 0..a-1 at positions < m} under a uniform order; tail of |X - mu| >= delta mu, mu = a m / n.
TailReport concentration_check(int n, int a, int m, double delta, std::int64_t n_samples, std::uint64_t seed);
TailReport concentration_check_serial(int n, int a, int m, double delta, std::int64_t n_samples,
                                      std::uint64_t seed);

struct BandReport {
    int band_lo = 0;
    int band_hi = 0;
    int b = 0;
    double outside_frequency = 0.0;
    double limit = 0.0;  // 1/k + 3 sigma
    std::int64_t samples = 0;
};

// Global rank of the tau-th largest value among the first m arrivals, versus [k - b, k + b]
// with b = floor(k^(2/3) log2 k).
BandReport statistic_band_check(int n, int k, int m, int tau, std::int64_t n_samples, std::uint64_t seed);

int band_width(int k);

}  // namespace secretary
