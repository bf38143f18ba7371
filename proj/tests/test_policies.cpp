#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "secretary/analysis.hpp"
#include "secretary/policies.hpp"

using namespace secretary;

namespace {

Permutation P(std::vector<int> one_based) { return Permutation::from_one_based(one_based); }

MultiPolicy multi(int m, int tau, int k, Comparison c = Comparison::strict, bool top_up = false) {
    MultiPolicy p;
    p.m = m;
    p.tau = tau;
    p.k = k;
    p.comparison = c;
    p.top_up = top_up;
    return p;
}

}  // namespace

TEST_CASE("single-threshold hand traces") {
    const ValueAssignment v({10, 20, 40, 30});
    auto a = run_single(P({1, 2, 3, 4}), v, {1});
    CHECK(a.picked_element == 1);
    CHECK_FALSE(a.success);
    auto b = run_single(P({2, 1, 3, 4}), v, {1});
    CHECK(b.picked_element == 2);
    CHECK(b.success);
    const ValueAssignment dec({40, 30, 20, 10});
    for (int m0 = 1; m0 <= 3; ++m0) {
        auto c = run_single(P({1, 2, 3, 4}), dec, {m0});
        CHECK(c.picked_element == 3);
        CHECK_FALSE(c.success);
    }
}

TEST_CASE("policy validation") {
    const ValueAssignment v({1, 2, 3});
    CHECK_THROWS_AS(run_single(Permutation::identity(3), v, {0}), std::invalid_argument);
    CHECK_THROWS_AS(run_single(Permutation::identity(3), v, {3}), std::invalid_argument);
    CHECK_THROWS_AS(run_single(Permutation::identity(4), v, {1}), std::invalid_argument);
    CHECK_THROWS_AS(run_multi(Permutation::identity(3), v, multi(1, 2, 1)), std::invalid_argument);
    CHECK_THROWS_AS(run_multi(Permutation::identity(3), v, multi(2, 1, 2)), std::invalid_argument);
}

TEST_CASE("multi-pick hand traces") {
    const ValueAssignment v({40, 30, 20, 10});
    auto a = run_multi(P({3, 4, 1, 2}), v, multi(2, 1, 2));
    CHECK(a.picked_elements == std::vector<int>{0, 1});
    CHECK(a.total == 70.0);
    auto b = run_multi(P({1, 2, 3, 4}), v, multi(2, 1, 2));
    CHECK(b.picked_elements.empty());
    CHECK(b.total == 0.0);
}

TEST_CASE("at-least comparison picks equal values after the window") {
    std::vector<double> vals(8, 0.5);
    vals[5] = 1.0;  // after position m + k = 3
    const ValueAssignment v(vals, true);
    auto out = run_multi(Permutation::identity(8), v, multi(2, 1, 1, Comparison::at_least));
    CHECK(out.picked_elements == std::vector<int>{2});
    CHECK(out.total == 0.5);
    auto strict = run_multi(Permutation::identity(8), v, multi(2, 1, 1));
    CHECK(strict.picked_elements == std::vector<int>{5});
}

TEST_CASE("top-up fills from the trailing positions") {
    const ValueAssignment v({40, 30, 20, 10});
    auto out = run_multi(P({1, 2, 3, 4}), v, multi(2, 1, 2, Comparison::strict, true));
    CHECK(out.picked_elements == std::vector<int>{2, 3});
    CHECK(out.total == 30.0);
}

TEST_CASE("expected ratio examples") {
    const ValueAssignment v({40, 30, 20, 10});
    const auto pol = multi(2, 1, 2);
    CHECK(expected_ratio(OrderDistribution::uniform({P({3, 4, 1, 2})}), v, pol) == doctest::Approx(1.0));
    CHECK(expected_ratio(OrderDistribution::uniform({P({3, 4, 1, 2}), P({1, 2, 3, 4})}), v, pol) ==
          doctest::Approx(0.5));
    // n = 2, k = 1, m = 1 over both orders: 0.5 without the trailing fill, 0.75 with it.
    const ValueAssignment two({2, 1});
    CHECK(expected_ratio(OrderDistribution::virtual_uniform(2), two, multi(1, 1, 1)) == doctest::Approx(0.5));
    CHECK(expected_ratio(OrderDistribution::virtual_uniform(2), two, multi(1, 1, 1, Comparison::strict, true)) ==
          doctest::Approx(0.75));
    CHECK_THROWS_AS(expected_ratio(OrderDistribution::virtual_uniform(2), ValueAssignment({0.0, -1.0}), multi(1, 1, 1)),
                    std::invalid_argument);
}

TEST_CASE("outcomes depend only on the rank order") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 10);
        std::vector<double> raw(n);
        for (auto& x : raw) x = U(rng);
        std::vector<double> moved(n);
        const double a = 0.1 + 0.2 * std::abs(U(rng)), b = U(rng);  // x -> e^{ax} + b + x^3 is increasing
        for (int i = 0; i < n; ++i) moved[i] = std::exp(a * raw[i]) + b + raw[i] * raw[i] * raw[i];
        const ValueAssignment v(raw), w(moved);
        const auto perm = random_permutation(n, rng);
        const int m0 = 1 + static_cast<int>(rng() % (n - 1));
        const auto x = run_single(perm, v, {m0});
        const auto y = run_single(perm, w, {m0});
        CHECK(x.picked_element == y.picked_element);
        CHECK(x.success == y.success);
    }
}

TEST_CASE("strict and at-least agree on distinct values; pick count bounded") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 12);
        std::vector<double> raw(n);
        for (int i = 0; i < n; ++i) raw[i] = static_cast<double>(rng() % 1000000) + i * 1e-3;
        const ValueAssignment v(raw);
        const auto perm = random_permutation(n, rng);
        const int m = 1 + static_cast<int>(rng() % (n - 1));
        const int tau = 1 + static_cast<int>(rng() % m);
        const int k = 1 + static_cast<int>(rng() % (n - m));
        const auto s = run_multi(perm, v, multi(m, tau, k));
        const auto a = run_multi(perm, v, multi(m, tau, k, Comparison::at_least));
        CHECK(s.picked_elements == a.picked_elements);
        CHECK(static_cast<int>(s.picked_elements.size()) <= k);
        const auto t = run_multi(perm, v, multi(m, tau, k, Comparison::strict, true));
        CHECK(static_cast<int>(t.picked_elements.size()) == k);
        for (int e : t.picked_elements) CHECK(perm.position_of(e) >= m);
    }
}

TEST_CASE("Monte Carlo success frequency converges to the formula") {
    const int n = 20;
    const auto t = best_threshold(n);
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = (i * 7) % n;
    const auto r = mc_estimate(SinglePolicy{static_cast<int>(t.m_star)}, ValueAssignment(vals), 200000, 11);
    CHECK(std::abs(r.mean - success_formula_f(n, t.m_star)) <= 0.005);
}
