#include "secretary/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace secretary {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)), pos_(order_.size(), -1) {
    const int n = size();
    for (int p = 0; p < n; ++p) {
        const int e = order_[p];
        if (e < 0 || e >= n) throw std::invalid_argument("permutation entry out of range: " + std::to_string(e + 1));
        if (pos_[e] != -1) throw std::invalid_argument("permutation repeats element " + std::to_string(e + 1));
        pos_[e] = p;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    return Permutation(std::move(o));
}

Permutation Permutation::from_one_based(const std::vector<int>& order) {
    std::vector<int> o(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) o[i] = order[i] - 1;
    return Permutation(std::move(o));
}

std::vector<int> Permutation::to_one_based() const {
    std::vector<int> o(order_);
    for (int& x : o) ++x;
    return o;
}

ValueAssignment::ValueAssignment(std::vector<double> values, bool ties_allowed)
    : values_(std::move(values)), ties_allowed_(ties_allowed) {
    const int n = size();
    if (n == 0) throw std::invalid_argument("value assignment is empty");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("value assignment has a non-finite value");
    by_rank_.resize(n);
    std::iota(by_rank_.begin(), by_rank_.end(), 0);
    std::stable_sort(by_rank_.begin(), by_rank_.end(), [&](int a, int b) { return values_[a] > values_[b]; });
    rank_.resize(n);
    for (int r = 0; r < n; ++r) rank_[by_rank_[r]] = r + 1;
    if (!ties_allowed_)
        for (int r = 1; r < n; ++r)
            if (values_[by_rank_[r]] == values_[by_rank_[r - 1]])
                throw std::invalid_argument("tied values (elements " + std::to_string(by_rank_[r - 1] + 1) + " and " +
                                            std::to_string(by_rank_[r] + 1) + ")");
}

double ValueAssignment::top_sum(int k) const {
    double s = 0.0;
    for (int r = 0; r < k && r < size(); ++r) s += values_[by_rank_[r]];
    return s;
}

namespace {

void check_common_n(const std::vector<Permutation>& support) {
    if (support.empty()) throw std::invalid_argument("distribution support is empty");
    const int n = support.front().size();
    if (n == 0) throw std::invalid_argument("permutations must have n >= 1");
    for (const auto& p : support)
        if (p.size() != n) throw std::invalid_argument("support permutations differ in size");
}

}  // namespace

OrderDistribution OrderDistribution::uniform(std::vector<Permutation> support) {
    check_common_n(support);
    OrderDistribution d;
    d.n_ = support.front().size();
    d.weights_.assign(support.size(), 1.0 / static_cast<double>(support.size()));
    d.support_ = std::move(support);
    return d;
}

OrderDistribution OrderDistribution::weighted(std::vector<Permutation> support, std::vector<double> weights) {
    check_common_n(support);
    if (weights.size() != support.size()) throw std::invalid_argument("weight count differs from support size");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive and finite");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("weights do not sum to 1");
    OrderDistribution d;
    d.n_ = support.front().size();
    d.uniform_ = std::all_of(weights.begin(), weights.end(), [&](double w) { return w == weights.front(); });
    d.support_ = std::move(support);
    d.weights_ = std::move(weights);
    return d;
}

OrderDistribution OrderDistribution::virtual_uniform(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    OrderDistribution d;
    d.n_ = n;
    d.virtual_ = true;
    return d;
}

OrderDistribution OrderDistribution::all_permutations(int n) {
    if (n < 1 || n > 10) throw std::invalid_argument("all_permutations supports 1 <= n <= 10");
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    std::vector<Permutation> support;
    do support.emplace_back(o);
    while (std::next_permutation(o.begin(), o.end()));
    return uniform(std::move(support));
}

const std::vector<Permutation>& OrderDistribution::support() const {
    if (virtual_) throw std::logic_error("virtual uniform distribution has no materialized support");
    return support_;
}

double entropy(const OrderDistribution& dist) {
    if (dist.is_virtual()) return std::lgamma(dist.n() + 1.0) / std::log(2.0);
    const auto& sup = dist.support();
    std::vector<std::size_t> idx(sup.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return sup[a] < sup[b]; });

    if (dist.is_uniform()) {
        // p = c/L per distinct member: H = log2 L - (1/L) sum c log2 c, exact for all-distinct supports.
        const double L = static_cast<double>(sup.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j < idx.size() && sup[idx[j]] == sup[idx[i]]) ++j;
            const double c = static_cast<double>(j - i);
            acc += c * std::log2(c);
            i = j;
        }
        return std::log2(L) - acc / L;
    }
    double h = 0.0;
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        double p = 0.0;
        while (j < idx.size() && sup[idx[j]] == sup[idx[i]]) p += dist.weight(idx[j++]);
        if (p > 0.0) h -= p * std::log2(p);
        i = j;
    }
    return h;
}

Permutation sample_order(const OrderDistribution& dist, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    if (dist.is_virtual()) return random_permutation(dist.n(), rng);
    const auto& sup = dist.support();
    if (sup.size() == 1) return sup.front();
    if (dist.is_uniform()) {
        std::uniform_int_distribution<std::size_t> pick(0, sup.size() - 1);
        return sup[pick(rng)];
    }
    std::discrete_distribution<std::size_t> pick(dist.weights().begin(), dist.weights().end());
    return sup[pick(rng)];
}

}  // namespace secretary
