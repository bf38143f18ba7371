#include "secretary/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "secretary/parallel.hpp"

namespace secretary {

namespace {

constexpr std::int64_t kHarmonicTable = 1000000;
constexpr double kEulerGamma = 0.57721566490153286060651209;

const std::vector<long double>& harmonic_table() {
    static const std::vector<long double> table = [] {
        std::vector<long double> t(kHarmonicTable + 1);
        t[0] = 0.0L;
        for (std::int64_t i = 1; i <= kHarmonicTable; ++i) t[i] = t[i - 1] + 1.0L / static_cast<long double>(i);
        return t;
    }();
    return table;
}

long double harmonic_ld(std::int64_t k) {
    if (k <= kHarmonicTable) return harmonic_table()[k];
    const long double x = static_cast<long double>(k);
    const long double x2 = x * x;
    return std::log(x) + kEulerGamma + 1.0L / (2 * x) - 1.0L / (12 * x2) + 1.0L / (120 * x2 * x2);
}

std::int64_t floor_n_over_e(std::int64_t n) { return static_cast<std::int64_t>(std::floor(n / kE)); }

// Rank order number `idx` (factorial base) written into r; r[e] = rank of element e, 0 = best.
void unrank(std::uint64_t idx, int n, std::vector<int>& r, std::vector<int>& pool) {
    pool.resize(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::uint64_t f = 1;
    for (int i = 2; i < n; ++i) f *= i;
    for (int e = 0; e < n; ++e) {
        const std::uint64_t q = f ? idx / f : 0;
        idx = f ? idx % f : 0;
        r[e] = pool[q];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
        if (n - 1 - e > 0) f /= (n - 1 - e);
    }
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<double> worst_case_impl(const OrderDistribution& dist, bool parallel) {
    const int n = dist.n();
    if (n > kWorstCaseMaxN) throw std::length_error("worst_case_success enumerates n! orders; n <= 9 only");
    if (n < 2) throw std::invalid_argument("worst_case_success needs n >= 2");
    const OrderDistribution full = dist.is_virtual() ? OrderDistribution::all_permutations(n) : OrderDistribution{};
    const OrderDistribution& d = dist.is_virtual() ? full : dist;
    const auto& sup = d.support();
    const std::size_t L = sup.size();
    const bool integral = d.is_uniform();

    // Flattened orders and positions for a tight inner loop.
    std::vector<int> order(L * n), pos(L * n);
    for (std::size_t s = 0; s < L; ++s)
        for (int i = 0; i < n; ++i) {
            order[s * n + i] = sup[s].at(i);
            pos[s * n + i] = sup[s].position_of(i);
        }

    const std::uint64_t total = factorial(n);
    // best[m0-1] is the minimum over rank orders, as a count (uniform) or a weight.
    std::vector<double> best(n - 1, std::numeric_limits<double>::infinity());

    auto one_order = [&](std::uint64_t idx, std::vector<int>& r, std::vector<int>& pool, std::vector<double>& diffw,
                         std::vector<std::int64_t>& diffc, std::vector<double>& out) {
        unrank(idx, n, r, pool);
        int top = 0;
        for (int e = 0; e < n; ++e)
            if (r[e] == 0) top = e;
        std::fill(diffw.begin(), diffw.end(), 0.0);
        std::fill(diffc.begin(), diffc.end(), 0);
        for (std::size_t s = 0; s < L; ++s) {
            const int p = pos[s * n + top];
            if (p == 0) continue;
            const int* o = &order[s * n];
            int q = 0, br = r[o[0]];
            for (int i = 1; i < p; ++i)
                if (r[o[i]] < br) br = r[o[i]], q = i;
            // Success for window sizes m0 in [q+1, p].
            if (integral) {
                ++diffc[q + 1];
                --diffc[p + 1];
            } else {
                diffw[q + 1] += d.weight(s);
                diffw[p + 1] -= d.weight(s);
            }
        }
        std::int64_t c = 0;
        double w = 0.0;
        for (int m0 = 1; m0 <= n - 1; ++m0) {
            c += diffc[m0];
            w += diffw[m0];
            out[m0 - 1] = integral ? static_cast<double>(c) : w;
        }
    };

    if (parallel) {
#pragma omp parallel
        {
            std::vector<int> r(n), pool;
            std::vector<double> diffw(n + 2), out(n - 1), local(n - 1, std::numeric_limits<double>::infinity());
            std::vector<std::int64_t> diffc(n + 2);
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(total); ++idx) {
                one_order(static_cast<std::uint64_t>(idx), r, pool, diffw, diffc, out);
                for (int i = 0; i < n - 1; ++i) local[i] = std::min(local[i], out[i]);
            }
#pragma omp critical
            for (int i = 0; i < n - 1; ++i) best[i] = std::min(best[i], local[i]);
        }
    } else {
        std::vector<int> r(n), pool;
        std::vector<double> diffw(n + 2), out(n - 1);
        std::vector<std::int64_t> diffc(n + 2);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            one_order(idx, r, pool, diffw, diffc, out);
            for (int i = 0; i < n - 1; ++i) best[i] = std::min(best[i], out[i]);
        }
    }
    if (integral)
        for (double& b : best) b /= static_cast<double>(L);
    return best;
}

double half_width_binomial(double p, std::int64_t N) {
    if (N <= 1) return std::numeric_limits<double>::quiet_NaN();
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(N));
}

std::int64_t chunk_count(std::int64_t n_samples) {
    return (n_samples + static_cast<std::int64_t>(kChunkSize) - 1) / static_cast<std::int64_t>(kChunkSize);
}

std::int64_t chunk_len(std::int64_t c, std::int64_t n_samples) {
    return std::min<std::int64_t>(kChunkSize, n_samples - c * static_cast<std::int64_t>(kChunkSize));
}

template <class Kernel>
std::vector<std::int64_t> count_chunks(std::int64_t n_samples, bool parallel, Kernel kernel) {
    const std::int64_t C = chunk_count(n_samples);
    std::vector<std::int64_t> hits(C, 0);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t c = 0; c < C; ++c) hits[c] = kernel(c, chunk_len(c, n_samples));
    } else {
        for (std::int64_t c = 0; c < C; ++c) hits[c] = kernel(c, chunk_len(c, n_samples));
    }
    return hits;
}

EvalReport mc_single_impl(const SinglePolicy& policy, const ValueAssignment& values, std::int64_t n_samples,
                          std::uint64_t seed, bool parallel) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    const int n = values.size();
    validate(policy, n);
    const auto& v = values.values();
    const int top = values.element_of_rank(1);
    auto kernel = [&](std::int64_t c, std::int64_t len) {
        auto rng = chunk_rng(seed, static_cast<std::uint64_t>(c));
        std::vector<int> buf(n);
        std::iota(buf.begin(), buf.end(), 0);
        std::int64_t hit = 0;
        for (std::int64_t s = 0; s < len; ++s) {
            fisher_yates(buf, rng);
            double best = v[buf[0]];
            for (int p = 1; p < policy.m0; ++p) best = std::max(best, v[buf[p]]);
            int picked = buf[n - 1];
            for (int p = policy.m0; p < n; ++p)
                if (v[buf[p]] > best) {
                    picked = buf[p];
                    break;
                }
            hit += picked == top;
        }
        return hit;
    };
    const auto hits = count_chunks(n_samples, parallel, kernel);
    const std::int64_t total = std::accumulate(hits.begin(), hits.end(), std::int64_t{0});
    EvalReport rep;
    rep.mode = EvalMode::monte_carlo;
    rep.samples = n_samples;
    rep.mean = static_cast<double>(total) / static_cast<double>(n_samples);
    rep.half_width_95 = half_width_binomial(rep.mean, n_samples);
    return rep;
}

}  // namespace

double harmonic(std::int64_t k) {
    if (k < 0) throw std::invalid_argument("harmonic(k) needs k >= 0");
    return static_cast<double>(harmonic_ld(k));
}

double harmonic_diff(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < a) throw std::invalid_argument("harmonic_diff needs 0 <= a <= b");
    if (b <= kHarmonicTable) return static_cast<double>(harmonic_table()[b] - harmonic_table()[a]);
    if (b - a <= kHarmonicTable) {
        long double s = 0.0L;
        for (std::int64_t i = b; i > a; --i) s += 1.0L / static_cast<long double>(i);
        return static_cast<double>(s);
    }
    return static_cast<double>(harmonic_ld(b) - harmonic_ld(a));
}

double success_formula_f(std::int64_t k, std::int64_t m) {
    if (k < 1 || m < 1 || m > k) throw std::invalid_argument("success_formula_f needs 1 <= m <= k");
    return static_cast<double>(m) / static_cast<double>(k) * harmonic_diff(m - 1, k - 1);
}

Threshold best_threshold(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("best_threshold needs n >= 2");
    // Smallest m in [1, n-2] with H_{n-1} - H_m <= 1; h is decreasing in m.
    std::int64_t lo = 1, hi = n - 1;  // answer in [lo, hi]; hi = n-1 means no sign change
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (harmonic_diff(mid, n - 1) <= 1.0)
            hi = mid;
        else
            lo = mid + 1;
    }
    Threshold t;
    t.m_star = lo;
    t.value = success_formula_f(n, lo);
    const std::int64_t fe = floor_n_over_e(n);
    t.near_n_over_e = lo == fe || lo == fe + 1;
    return t;
}

Threshold best_threshold_scan(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("best_threshold needs n >= 2");
    Threshold t;
    t.value = -1.0;
    for (std::int64_t m = 1; m <= n - 1; ++m) {
        const double f = success_formula_f(n, m);
        if (f > t.value) t.value = f, t.m_star = m;
    }
    const std::int64_t fe = floor_n_over_e(n);
    t.near_n_over_e = t.m_star == fe || t.m_star == fe + 1;
    return t;
}

OptExpansion opt_expansion(std::int64_t n) {
    OptExpansion o;
    o.opt_exact = best_threshold(n).value;
    o.approx = 1.0 / kE + kC0 / static_cast<double>(n);
    o.residual = o.opt_exact - o.approx;
    return o;
}

RhoBound rho_single(std::int64_t n, std::int64_t m0, int k) {
    if (k < 1) throw std::invalid_argument("rho_single needs k >= 1");
    if (n < 2 || m0 < 1 || m0 > n - 1) throw std::invalid_argument("rho_single needs 1 <= m0 <= n-1");
    const double base = static_cast<double>(n - m0) / static_cast<double>(n - 1);
    RhoBound r;
    r.value = best_threshold(n).value - (2.0 / k) * std::pow(base, k);
    r.vacuous = r.value <= 0.0;
    return r;
}

RhoBound rho_multi(std::int64_t n, std::int64_t m, int k) {
    if (k < 1 || n < 1) throw std::invalid_argument("rho_multi needs k >= 1, n >= 1");
    RhoBound r;
    r.value = (1.0 - static_cast<double>(m) / static_cast<double>(n)) * (1.0 - 1.0 / k) *
              (1.0 - std::log2(static_cast<double>(k)) / std::cbrt(static_cast<double>(k)));
    r.vacuous = r.value <= 0.0;
    return r;
}

double worst_case_success(const OrderDistribution& dist, const SinglePolicy& policy) {
    validate(policy, dist.n());
    return worst_case_success_all(dist)[policy.m0 - 1];
}

std::vector<double> worst_case_success_all(const OrderDistribution& dist) { return worst_case_impl(dist, true); }

std::vector<double> worst_case_success_all_serial(const OrderDistribution& dist) {
    return worst_case_impl(dist, false);
}

EvalReport mc_estimate(const SinglePolicy& policy, const ValueAssignment& values, std::int64_t n_samples,
                       std::uint64_t seed) {
    return mc_single_impl(policy, values, n_samples, seed, true);
}

EvalReport mc_estimate_serial(const SinglePolicy& policy, const ValueAssignment& values, std::int64_t n_samples,
                              std::uint64_t seed) {
    return mc_single_impl(policy, values, n_samples, seed, false);
}

EvalReport mc_estimate(const MultiPolicy& policy, const ValueAssignment& values, std::int64_t n_samples,
                       std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    const int n = values.size();
    validate(policy, n);
    const double V = values.top_sum(policy.k);
    if (!(V > 0.0)) throw std::invalid_argument("top-k value sum must be positive");
    const std::int64_t C = chunk_count(n_samples);
    std::vector<double> sum(C, 0.0), sumsq(C, 0.0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < C; ++c) {
        auto rng = chunk_rng(seed, static_cast<std::uint64_t>(c));
        std::vector<int> buf(n);
        std::iota(buf.begin(), buf.end(), 0);
        const std::int64_t len = chunk_len(c, n_samples);
        for (std::int64_t s = 0; s < len; ++s) {
            fisher_yates(buf, rng);
            const double x = run_multi(Permutation(buf), values, policy).total / V;
            sum[c] += x;
            sumsq[c] += x * x;
        }
    }
    double S = 0.0, Q = 0.0;
    for (std::int64_t c = 0; c < C; ++c) S += sum[c], Q += sumsq[c];
    EvalReport rep;
    rep.mode = EvalMode::monte_carlo;
    rep.samples = n_samples;
    const double N = static_cast<double>(n_samples);
    rep.mean = S / N;
    if (n_samples == 1) {
        rep.half_width_95 = std::numeric_limits<double>::quiet_NaN();
    } else {
        const double var = std::max(0.0, (Q - N * rep.mean * rep.mean) / (N - 1.0));
        rep.half_width_95 = 1.96 * std::sqrt(var / N);
    }
    return rep;
}

EvalReport exact_evaluate(const OrderDistribution& dist, const ValueAssignment& values, const SinglePolicy& policy) {
    if (dist.n() != values.size()) throw std::invalid_argument("distribution and value assignment sizes differ");
    const OrderDistribution full = dist.is_virtual() ? OrderDistribution::all_permutations(dist.n()) : OrderDistribution{};
    const OrderDistribution& d = dist.is_virtual() ? full : dist;
    EvalReport rep;
    rep.mode = EvalMode::exact;
    rep.samples = static_cast<std::int64_t>(d.support_size());
    if (d.is_uniform()) {
        std::int64_t hit = 0;
        for (const auto& p : d.support()) hit += run_single(p, values, policy).success;
        rep.mean = static_cast<double>(hit) / static_cast<double>(d.support_size());
    } else {
        for (std::size_t i = 0; i < d.support_size(); ++i)
            if (run_single(d.support()[i], values, policy).success) rep.mean += d.weight(i);
    }
    return rep;
}

EvalReport exact_evaluate(const OrderDistribution& dist, const ValueAssignment& values, const MultiPolicy& policy) {
    EvalReport rep;
    rep.mode = EvalMode::exact;
    rep.mean = expected_ratio(dist, values, policy);
    rep.samples = dist.is_virtual() ? static_cast<std::int64_t>(factorial(dist.n()))
                                    : static_cast<std::int64_t>(dist.support_size());
    return rep;
}

namespace {

TailReport concentration_impl(int n, int a, int m, double delta, std::int64_t n_samples, std::uint64_t seed,
                              bool parallel) {
    if (n < 1 || a < 1 || a > n) throw std::invalid_argument("concentration_check needs 1 <= a <= n");
    if (m < 0 || m > n) throw std::invalid_argument("concentration_check needs 0 <= m <= n");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    const double mu = static_cast<double>(a) * m / n;
    auto kernel = [&](std::int64_t c, std::int64_t len) {
        auto rng = chunk_rng(seed, static_cast<std::uint64_t>(c));
        std::vector<int> buf(n);
        std::iota(buf.begin(), buf.end(), 0);
        std::int64_t hit = 0;
        for (std::int64_t s = 0; s < len; ++s) {
            // Any arrangement pushed through a partial shuffle gives a uniform window.
            partial_fisher_yates(buf, static_cast<std::size_t>(m), rng);
            int x = 0;
            for (int p = 0; p < m; ++p) x += buf[p] < a;
            hit += std::abs(x - mu) >= delta * mu;
        }
        return hit;
    };
    const auto hits = count_chunks(n_samples, parallel, kernel);
    TailReport rep;
    rep.samples = n_samples;
    rep.mu = mu;
    rep.empirical_tail =
        static_cast<double>(std::accumulate(hits.begin(), hits.end(), std::int64_t{0})) / static_cast<double>(n_samples);
    rep.bound = 2.0 * std::exp(-delta * delta * mu / 3.0);
    const double p = std::min(rep.bound, 1.0);
    rep.sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    return rep;
}

}  // namespace

TailReport concentration_check(int n, int a, int m, double delta, std::int64_t n_samples, std::uint64_t seed) {
    return concentration_impl(n, a, m, delta, n_samples, seed, true);
}

TailReport concentration_check_serial(int n, int a, int m, double delta, std::int64_t n_samples,
                                      std::uint64_t seed) {
    return concentration_impl(n, a, m, delta, n_samples, seed, false);
}

int band_width(int k) {
    if (k < 1) throw std::invalid_argument("band_width needs k >= 1");
    const double c = std::cbrt(static_cast<double>(k));
    return static_cast<int>(std::floor(c * c * std::log2(static_cast<double>(k)) + 1e-9));
}

BandReport statistic_band_check(int n, int k, int m, int tau, std::int64_t n_samples, std::uint64_t seed) {
    if (m < 1 || m >= n || tau < 1 || tau > m) throw std::invalid_argument("statistic_band_check needs 1 <= tau <= m < n");
    if (k < 1 || n_samples < 1) throw std::invalid_argument("statistic_band_check needs k >= 1, n_samples >= 1");
    BandReport rep;
    rep.b = band_width(k);
    rep.band_lo = k - rep.b;
    rep.band_hi = k + rep.b;
    auto kernel = [&](std::int64_t c, std::int64_t len) {
        auto rng = chunk_rng(seed, static_cast<std::uint64_t>(c));
        std::vector<int> buf(n), win(m);
        std::iota(buf.begin(), buf.end(), 0);
        std::int64_t out = 0;
        for (std::int64_t s = 0; s < len; ++s) {
            partial_fisher_yates(buf, static_cast<std::size_t>(m), rng);
            // Element id is its 0-based global rank (0 = largest value).
            std::copy(buf.begin(), buf.begin() + m, win.begin());
            std::nth_element(win.begin(), win.begin() + (tau - 1), win.end());
            const int rank = win[tau - 1] + 1;
            out += rank < rep.band_lo || rank > rep.band_hi;
        }
        return out;
    };
    const auto hits = count_chunks(n_samples, true, kernel);
    rep.samples = n_samples;
    rep.outside_frequency =
        static_cast<double>(std::accumulate(hits.begin(), hits.end(), std::int64_t{0})) / static_cast<double>(n_samples);
    const double p = 1.0 / k;
    rep.limit = p + 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    return rep;
}

}  // namespace secretary
