#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <vector>

namespace secretary {

// Elements and positions are 0-based in memory; files and the CLI use 1-based.
class Permutation {
public:
    Permutation() = default;
    // order[pos] = element arriving at pos. Throws unless order is a bijection on [0, n).
    explicit Permutation(std::vector<int> order);

    static Permutation identity(int n);
    static Permutation from_one_based(const std::vector<int>& order);

    int size() const { return static_cast<int>(order_.size()); }
    int at(int pos) const { return order_[pos]; }
    int position_of(int element) const { return pos_[element]; }
    const std::vector<int>& order() const { return order_; }
    const std::vector<int>& positions() const { return pos_; }
    std::vector<int> to_one_based() const;

    bool operator==(const Permutation& o) const { return order_ == o.order_; }
    auto operator<=>(const Permutation& o) const { return order_ <=> o.order_; }

private:
    std::vector<int> order_;
    std::vector<int> pos_;  // inverse map, cached
};

class ValueAssignment {
public:
    ValueAssignment() = default;
    // values[e] for element e. Ties rejected unless ties_allowed.
    explicit ValueAssignment(std::vector<double> values, bool ties_allowed = false);

    int size() const { return static_cast<int>(values_.size()); }
    double value(int element) const { return values_[element]; }
    const std::vector<double>& values() const { return values_; }
    bool ties_allowed() const { return ties_allowed_; }

    // 1 = largest. Ties broken by lower element index.
    int rank(int element) const { return rank_[element]; }
    // Element holding rank r (1-based rank).
    int element_of_rank(int r) const { return by_rank_[r - 1]; }
    // Sum of the k largest values.
    double top_sum(int k) const;

private:
    std::vector<double> values_;
    std::vector<int> rank_;
    std::vector<int> by_rank_;
    bool ties_allowed_ = false;
};

// Weighted multiset of permutations of a common n, or the virtual uniform
// distribution over all n! permutations (nothing materialized).
class OrderDistribution {
public:
    OrderDistribution() = default;

    static OrderDistribution uniform(std::vector<Permutation> support);
    // Weights must be positive and sum to 1 within 1e-12.
    static OrderDistribution weighted(std::vector<Permutation> support, std::vector<double> weights);
    static OrderDistribution virtual_uniform(int n);
    // Every permutation of [n] exactly once, lexicographic order.
    static OrderDistribution all_permutations(int n);

    int n() const { return n_; }
    bool is_virtual() const { return virtual_; }
    bool is_uniform() const { return uniform_; }
    std::size_t support_size() const { return support_.size(); }
    const std::vector<Permutation>& support() const;
    const std::vector<double>& weights() const { return weights_; }
    double weight(std::size_t i) const { return weights_[i]; }

private:
    int n_ = 0;
    bool virtual_ = false;
    bool uniform_ = true;
    std::vector<Permutation> support_;
    std::vector<double> weights_;
};

// Shannon entropy in bits. Duplicate support members are merged first.
double entropy(const OrderDistribution& dist);

Permutation sample_order(const OrderDistribution& dist, std::uint64_t seed);

// Fisher-Yates over a caller-owned buffer; buf ends up a uniform permutation of its contents.
template <class Rng>
void fisher_yates(std::vector<int>& buf, Rng& rng) {
    for (std::size_t i = buf.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(buf[i - 1], buf[pick(rng)]);
    }
}

// Only the first m slots are randomized (uniform m-subset in uniform order).
template <class Rng>
void partial_fisher_yates(std::vector<int>& buf, std::size_t m, Rng& rng) {
    const std::size_t n = buf.size();
    for (std::size_t i = 0; i < m && i + 1 < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(buf[i], buf[pick(rng)]);
    }
}

template <class Rng>
Permutation random_permutation(int n, Rng& rng) {
    std::vector<int> buf(n);
    for (int i = 0; i < n; ++i) buf[i] = i;
    fisher_yates(buf, rng);
    return Permutation(std::move(buf));
}

}  // namespace secretary
