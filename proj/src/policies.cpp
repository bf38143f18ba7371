#include "secretary/policies.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace secretary {

void validate(const SinglePolicy& p, int n) {
    if (p.m0 < 1 || p.m0 > n - 1)
        throw std::invalid_argument("m0 must lie in [1, n-1], got " + std::to_string(p.m0));
}

void validate(const MultiPolicy& p, int n) {
    if (p.m < 1 || p.m > n - 1) throw std::invalid_argument("m must lie in [1, n-1], got " + std::to_string(p.m));
    if (p.tau < 1 || p.tau > p.m) throw std::invalid_argument("tau must lie in [1, m]");
    if (p.k < 1 || p.k > n - p.m) throw std::invalid_argument("k must lie in [1, n-m]");
}

namespace {

void check_sizes(const Permutation& perm, const ValueAssignment& values) {
    if (perm.size() != values.size()) throw std::invalid_argument("permutation and value assignment sizes differ");
}

}  // namespace

SingleOutcome run_single(const Permutation& perm, const ValueAssignment& values, const SinglePolicy& policy) {
    check_sizes(perm, values);
    const int n = perm.size();
    validate(policy, n);
    double best = values.value(perm.at(0));
    for (int p = 1; p < policy.m0; ++p) best = std::max(best, values.value(perm.at(p)));
    int picked = perm.at(n - 1);
    for (int p = policy.m0; p < n; ++p) {
        if (values.value(perm.at(p)) > best) {
            picked = perm.at(p);
            break;
        }
    }
    return {picked, values.rank(picked) == 1};
}

MultiOutcome run_multi(const Permutation& perm, const ValueAssignment& values, const MultiPolicy& policy) {
    check_sizes(perm, values);
    const int n = perm.size();
    validate(policy, n);
    std::vector<double> window(policy.m);
    for (int p = 0; p < policy.m; ++p) window[p] = values.value(perm.at(p));
    std::nth_element(window.begin(), window.begin() + (policy.tau - 1), window.end(), std::greater<>());
    const double t = window[policy.tau - 1];

    MultiOutcome out;
    std::vector<char> taken(n, 0);
    for (int p = policy.m; p < n && static_cast<int>(out.picked_elements.size()) < policy.k; ++p) {
        const double v = values.value(perm.at(p));
        const bool pass = policy.comparison == Comparison::strict ? v > t : v >= t;
        if (pass) {
            out.picked_elements.push_back(perm.at(p));
            taken[p] = 1;
        }
    }
    if (policy.top_up) {
        // The last (k - picked) post-window arrivals not already taken.
        int missing = policy.k - static_cast<int>(out.picked_elements.size());
        std::vector<int> fill;
        for (int p = n - 1; p >= policy.m && missing > 0; --p) {
            if (!taken[p]) {
                fill.push_back(p);
                --missing;
            }
        }
        for (int p : fill) taken[p] = 1;
        out.picked_elements.clear();
        for (int p = policy.m; p < n; ++p)
            if (taken[p]) out.picked_elements.push_back(perm.at(p));
    }
    for (int e : out.picked_elements) out.total += values.value(e);
    return out;
}

double expected_ratio(const OrderDistribution& dist, const ValueAssignment& values, const MultiPolicy& policy) {
    if (dist.n() != values.size()) throw std::invalid_argument("distribution and value assignment sizes differ");
    const double V = values.top_sum(policy.k);
    if (!(V > 0.0)) throw std::invalid_argument("top-k value sum must be positive");
    const OrderDistribution full = dist.is_virtual() ? OrderDistribution::all_permutations(dist.n()) : OrderDistribution{};
    const OrderDistribution& d = dist.is_virtual() ? full : dist;
    double acc = 0.0;
    for (std::size_t i = 0; i < d.support_size(); ++i) acc += d.weight(i) * run_multi(d.support()[i], values, policy).total;
    return acc / V;
}

}  // namespace secretary
