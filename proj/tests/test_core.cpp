#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "secretary/core.hpp"

using namespace secretary;

TEST_CASE("permutation rejects non-bijections") {
    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({-1, 0}), std::invalid_argument);
    CHECK_NOTHROW(Permutation({2, 0, 1}));
}

TEST_CASE("position map inverts the order map") {
    std::mt19937_64 rng(1);
    for (int n = 1; n <= 40; ++n) {
        const auto p = random_permutation(n, rng);
        for (int pos = 0; pos < n; ++pos) CHECK(p.position_of(p.at(pos)) == pos);
        for (int e = 0; e < n; ++e) CHECK(p.at(p.position_of(e)) == e);
    }
}

TEST_CASE("one-based conversion round-trips") {
    const auto p = Permutation::from_one_based({3, 1, 2});
    CHECK(p.order() == std::vector<int>{2, 0, 1});
    CHECK(p.to_one_based() == std::vector<int>{3, 1, 2});
    CHECK(Permutation::identity(4).order() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("value ranks: 1 is largest") {
    const ValueAssignment v({10, 20, 40, 30});
    CHECK(v.rank(2) == 1);
    CHECK(v.rank(3) == 2);
    CHECK(v.rank(1) == 3);
    CHECK(v.rank(0) == 4);
    CHECK(v.element_of_rank(1) == 2);
    CHECK(v.top_sum(2) == doctest::Approx(70.0));
}

TEST_CASE("ties are rejected unless allowed") {
    CHECK_THROWS_AS(ValueAssignment({1.0, 2.0, 1.0}), std::invalid_argument);
    const ValueAssignment t({1.0, 2.0, 1.0}, true);
    CHECK(t.rank(1) == 1);
    CHECK(t.rank(0) == 2);  // lower index wins the tie
    CHECK(t.rank(2) == 3);
    CHECK_THROWS_AS(ValueAssignment({1.0, NAN}), std::invalid_argument);
    CHECK_THROWS_AS(ValueAssignment({1.0, INFINITY}), std::invalid_argument);
}

TEST_CASE("entropy examples") {
    std::vector<Permutation> eight;
    {
        const auto all = OrderDistribution::all_permutations(4);
        eight.assign(all.support().begin(), all.support().begin() + 8);
    }
    CHECK(entropy(OrderDistribution::uniform(eight)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(entropy(OrderDistribution::uniform({Permutation::identity(5)})) == 0.0);
    const auto w = OrderDistribution::weighted(
        {Permutation({0, 1, 2}), Permutation({1, 0, 2}), Permutation({2, 1, 0})}, {0.5, 0.25, 0.25});
    CHECK(std::abs(entropy(w) - 1.5) <= 1e-12);
}

TEST_CASE("entropy of uniform powers of two is exact") {
    const auto all = OrderDistribution::all_permutations(6);
    for (int e = 0; e <= 9; ++e) {
        std::vector<Permutation> s(all.support().begin(), all.support().begin() + (1 << e));
        CHECK(entropy(OrderDistribution::uniform(s)) == static_cast<double>(e));
    }
}

TEST_CASE("entropy is unchanged when duplicates are merged") {
    const Permutation a({0, 1, 2}), b({1, 2, 0}), c({2, 0, 1});
    const auto dup = OrderDistribution::uniform({a, b, a, c});
    const auto merged = OrderDistribution::weighted({a, b, c}, {0.5, 0.25, 0.25});
    CHECK(std::abs(entropy(dup) - entropy(merged)) <= 1e-12);
    // Weighted duplicates too.
    const auto wdup = OrderDistribution::weighted({a, a, b}, {0.25, 0.25, 0.5});
    CHECK(std::abs(entropy(wdup) - 1.0) <= 1e-12);
}

TEST_CASE("virtual uniform entropy is log2 n!") {
    CHECK(entropy(OrderDistribution::virtual_uniform(5)) == doctest::Approx(std::log2(120.0)).epsilon(1e-12));
}

TEST_CASE("weights must be positive and sum to one") {
    const Permutation a({0, 1}), b({1, 0});
    CHECK_THROWS_AS(OrderDistribution::weighted({a, b}, {0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(OrderDistribution::weighted({a, b}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(OrderDistribution::weighted({a, b}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(OrderDistribution::uniform({a, Permutation::identity(3)}), std::invalid_argument);
    CHECK_THROWS_AS(OrderDistribution::uniform({}), std::invalid_argument);
}

TEST_CASE("all permutations are listed lexicographically") {
    const auto d = OrderDistribution::all_permutations(3);
    REQUIRE(d.support_size() == 6);
    CHECK(d.support()[0].order() == std::vector<int>{0, 1, 2});
    CHECK(d.support()[1].order() == std::vector<int>{0, 2, 1});
    CHECK(d.support()[5].order() == std::vector<int>{2, 1, 0});
    CHECK(std::is_sorted(d.support().begin(), d.support().end()));
    CHECK_THROWS_AS(OrderDistribution::virtual_uniform(3).support(), std::logic_error);
}

TEST_CASE("sampling: singleton and determinism") {
    const auto single = OrderDistribution::uniform({Permutation({2, 0, 1})});
    for (std::uint64_t s = 0; s < 20; ++s) CHECK(sample_order(single, s).order() == std::vector<int>{2, 0, 1});
    const auto v = OrderDistribution::virtual_uniform(30);
    CHECK(sample_order(v, 99) == sample_order(v, 99));
    const auto w = OrderDistribution::weighted({Permutation({0, 1}), Permutation({1, 0})}, {0.3, 0.7});
    CHECK(sample_order(w, 5) == sample_order(w, 5));
}

TEST_CASE("virtual uniform sampling is uniform over 3! orders") {
    const auto v = OrderDistribution::virtual_uniform(3);
    std::map<std::vector<int>, int> freq;
    const int N = 60000;
    for (int s = 0; s < N; ++s) ++freq[sample_order(v, static_cast<std::uint64_t>(s)).order()];
    REQUIRE(freq.size() == 6);
    double chi2 = 0.0;
    for (const auto& [order, c] : freq) {
        CHECK(std::abs(c / static_cast<double>(N) - 1.0 / 6.0) <= 0.01);
        chi2 += (c - N / 6.0) * (c - N / 6.0) / (N / 6.0);
    }
    CHECK(chi2 < 20.5);  // 5 degrees of freedom, p = 0.001
}

TEST_CASE("weighted sampling follows the weights") {
    const auto w = OrderDistribution::weighted({Permutation({0, 1}), Permutation({1, 0})}, {0.2, 0.8});
    int second = 0;
    const int N = 20000;
    for (int s = 0; s < N; ++s) second += sample_order(w, static_cast<std::uint64_t>(s)).at(0) == 1;
    CHECK(std::abs(second / static_cast<double>(N) - 0.8) <= 0.015);
}
