#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "secretary/core.hpp"
#include "secretary/policies.hpp"

namespace secretary {

// Raised when a run would exceed the configured tuple-evaluation budget or an enumeration guard.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultBudget = 10000000;
// ENTROPY_SECRETARY_BUDGET overrides the default when set to a positive integer.
std::int64_t default_budget();

enum class TupleKind { single, multi };

// indices[i] is the element holding global rank i+1 (0-based element ids).
struct TupleSpec {
    TupleKind kind = TupleKind::single;
    std::vector<int> indices;
    int distinguished = -1;  // multi: 0-based slot of j0 in indices
    int k = 0;
    int band = 0;  // multi: b
};

// Parameters of the multi-kind tuples for a given k.
struct MultiTupleParams {
    int k = 0;
    int b = 0;             // floor(k^(2/3) log2 k)
    double eps = 0.0;      // log2 k / k^(1/3), clamped to [0, 1)
    int j0_slots = 0;      // max(1, floor((1 - eps) k)); j0 ranges over the first j0_slots entries
    int band_lo = 0;       // max(1, k - b)
    int band_hi = 0;       // k + b
    int length() const { return k + b; }
};
MultiTupleParams multi_tuple_params(int k);

TupleSpec make_single_tuple(std::vector<int> indices);
TupleSpec make_multi_tuple(std::vector<int> indices, int distinguished, int k);

// All ordered k-tuples of distinct elements of [n], lexicographic.
std::vector<TupleSpec> enumerate_single_tuples(int n, int k);
// All ordered (k+b)-tuples times every admissible j0 slot.
std::vector<TupleSpec> enumerate_multi_tuples(int n, int k);
std::int64_t count_single_tuples(int n, int k);
std::int64_t count_multi_tuples(int n, int k);

bool successful_single(const Permutation& perm, const TupleSpec& tuple, int m0);
// Event form: j0 after the window, statistic of rank u in the band, j0 among the first k exceeders.
bool successful_multi(const Permutation& perm, const TupleSpec& tuple, const MultiPolicy& policy);
// Same predicate through run_multi on a value assignment ranking the tuple on top.
bool successful_multi_by_run(const Permutation& perm, const TupleSpec& tuple, const MultiPolicy& policy);
// Statistic event B_u together with A and C for one u.
bool successful_multi_u(const Permutation& perm, const TupleSpec& tuple, int u, const MultiPolicy& policy);

// Positions 0..r-1 fixed to prefix; the rest uniformly random.
double cond_prob_single(const TupleSpec& tuple, const std::vector<int>& prefix, int m0, int n);
double cond_prob_multi(const TupleSpec& tuple, int u, const std::vector<int>& prefix, const MultiPolicy& policy, int n);
// Sum of cond_prob_multi over the band.
double cond_prob_multi_total(const TupleSpec& tuple, const std::vector<int>& prefix, const MultiPolicy& policy, int n);

// sum_{i=2}^{k} Pr[E_i] for a uniform order: (m0/n) prod_{j<i} (n-m0-j+1)/(n-j) * 1/(i-1).
double cond_prob_single_closed_form(int n, int k, int m0);

inline constexpr int kBruteForceFree = 9;
// Exact fraction of the (n-r)! completions satisfying pred; n - r <= 9.
double brute_force_cond_prob(const std::function<bool(const Permutation&)>& pred, const std::vector<int>& prefix,
                             int n);

struct TraceEntry {
    int s = 0;       // 1-based index of the permutation being fixed
    int r = 0;       // 1-based position just fixed (0 = start of this permutation)
    int chosen = -1;  // element placed (0-based), -1 at r = 0
    double phi = 0.0;
};

struct GreedyOptions {
    std::int64_t budget = -1;  // < 0: default_budget()
    bool parallel = true;
    std::ostream* trace = nullptr;
};

struct GreedyResult {
    OrderDistribution dist;
    std::vector<TraceEntry> trace;
    int ell = 0;
    double eps = 0.0;
    double mu_low = 0.0;
    double phi_random = 0.0;  // estimator with every permutation random
    double phi_start = 0.0;   // after fixing the identity as the first permutation
    double phi_final = 0.0;
    bool monotone = true;
    std::int64_t evaluations = 0;
    std::int64_t min_successes = 0;  // min over tuples of successful permutations in the result
    bool target_met = false;         // min_successes >= (1 - eps) mu_low ell
};

// ceil(2 k ln n / (mu eps^2)).
int lemma_ell_single(int n, int k, double mu, double eps);
// ceil(2 [k' ln n + k' ln k' + ln j0_slots] / (delta^2 mu)), k' = k + b.
int lemma_ell_multi(int n, int k, double mu, double delta);

// min over tuples of the unconditional success probability.
double mu_low_single(int n, int k, int m0);
double mu_low_multi(int n, const MultiPolicy& policy);

// ell <= 0 selects the size bound computed with mu_low as the per-tuple success floor.
GreedyResult greedy_find_single(int n, int k, int m0, double eps_prime, int ell, const GreedyOptions& opt = {});
GreedyResult greedy_find_multi(int n, int k, int m, int tau, double delta, int ell, const GreedyOptions& opt = {});

struct CoverageReport {
    double min_fraction = 1.0;
    TupleSpec worst_tuple;
    std::int64_t tuples = 0;
};

CoverageReport coverage_check_single(const OrderDistribution& dist, int k, int m0, std::int64_t budget = -1);
CoverageReport coverage_check_multi(const OrderDistribution& dist, const MultiPolicy& policy, std::int64_t budget = -1);

}  // namespace secretary
