#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "secretary/analysis.hpp"
#include "secretary/composition.hpp"
#include "secretary/derand.hpp"

using namespace secretary;

TEST_CASE("compose a halves function with the block swap") {
    const std::vector<int> f{0, 0, 1, 1};
    const auto out = compose_one(f, 2, Permutation({1, 0}));
    CHECK(out.order() == std::vector<int>{2, 3, 0, 1});
    CHECK(preserves_block_order(f, Permutation({1, 0}), out));
    CHECK_FALSE(preserves_block_order(f, Permutation({1, 0}), Permutation::identity(4)));
    CHECK_THROWS_AS(compose_one(f, 3, Permutation({1, 0})), std::invalid_argument);
}

TEST_CASE("a bijective function relabels the small permutation") {
    const std::vector<int> f{2, 0, 1};
    const Permutation pi({1, 2, 0});
    const auto out = compose_one(f, 3, pi);
    for (int p = 0; p < 3; ++p) CHECK(f[out.at(p)] == pi.at(p));
}

TEST_CASE("composition size, order and entropy") {
    ReductionFamily fam;
    fam.n = 6;
    fam.ell = 2;
    fam.funcs = {{0, 0, 0, 1, 1, 1}, {0, 1, 0, 1, 0, 1}, {1, 1, 0, 0, 1, 0}};
    const auto small = OrderDistribution::all_permutations(2);
    const auto d = compose(fam, small);
    REQUIRE(d.support_size() == 6);
    CHECK(std::abs(entropy(d) - std::log2(6.0)) <= 1e-12);
    for (int f = 0; f < 3; ++f)
        for (int s = 0; s < 2; ++s) {
            const auto& sigma = d.support()[f * 2 + s];
            CHECK(sigma == compose_one(fam.funcs[f], 2, small.support()[s]));
            CHECK(preserves_block_order(fam.funcs[f], small.support()[s], sigma));
        }
    const auto ser = compose_serial(fam, small);
    CHECK(ser.support() == d.support());
    CHECK(compose(fam, OrderDistribution::virtual_uniform(2)).support() == d.support());
}

TEST_CASE("composition rejects mismatched inputs") {
    ReductionFamily fam;
    fam.n = 4;
    fam.ell = 2;
    fam.funcs = {{0, 0, 1, 1}};
    CHECK_THROWS_AS(compose(fam, OrderDistribution::all_permutations(3)), std::invalid_argument);
    const auto w = OrderDistribution::weighted({Permutation({0, 1}), Permutation({1, 0})}, {0.25, 0.75});
    CHECK_THROWS_AS(compose(fam, w), std::invalid_argument);
    fam.funcs.clear();
    CHECK_THROWS_AS(compose(fam, OrderDistribution::all_permutations(2)), std::invalid_argument);
}

TEST_CASE("compose: serial reference equals the parallel kernel on a real code") {
    const auto fam = build_single_code(64, 5, 2);
    const auto small = OrderDistribution::all_permutations(5);
    CHECK(compose(fam, small).support() == compose_serial(fam, small).support());
}

TEST_CASE("threshold scaling") {
    CHECK(scale_threshold(2, 100, 5) == 40);
    CHECK(scale_threshold(1, 8, 5) == 1);
    CHECK(scale_threshold(0, 8, 5) == 1);
    CHECK(scale_threshold(5, 8, 5) == 7);
}

TEST_CASE("pipeline variants") {
    CHECK(parse_variant("1-sec-derand") == PipelineVariant::one_sec_derand);
    for (auto v : {PipelineVariant::k_sec_allperms, PipelineVariant::k_sec_derand, PipelineVariant::one_sec_allperms,
                   PipelineVariant::one_sec_derand})
        CHECK(parse_variant(variant_name(v)) == v);
    CHECK_THROWS_AS(parse_variant("2-sec"), std::invalid_argument);
}

TEST_CASE("pipeline on a small code") {
    PipelineConfig cfg;
    cfg.n = 8;
    cfg.k = 2;
    cfg.q = 5;
    cfg.d = 1;
    cfg.variant = PipelineVariant::one_sec_allperms;
    const auto r = build_pipeline(cfg);
    CHECK(r.dist.support_size() == 5 * 120);
    REQUIRE(r.single_policy.has_value());
    const int m0 = static_cast<int>(best_threshold(5).m_star);
    CHECK(r.single_policy->m0 == scale_threshold(m0, 8, 5));
    CHECK(r.small_bound == doctest::Approx(cond_prob_single_closed_form(5, 2, m0)));
    CHECK(r.predicted_ratio == doctest::Approx((1.0 - 4.0 / 5.0) * r.small_bound));
    CHECK_FALSE(r.vacuous);
    CHECK_FALSE(r.warnings.empty());

    // The realized worst case meets the predicted lower bound.
    CHECK(worst_case_success(r.dist, *r.single_policy) >= r.predicted_ratio - 1e-12);

    cfg.k = 3;
    CHECK(build_pipeline(cfg).vacuous);
    cfg.n = 3;
    CHECK_THROWS_AS(build_pipeline(cfg), std::invalid_argument);
}

TEST_CASE("pipeline refuses large all-permutation small sets") {
    PipelineConfig cfg;
    cfg.n = 200;
    cfg.q = 11;
    cfg.d = 2;
    CHECK_THROWS_AS(build_pipeline(cfg), std::invalid_argument);
}

TEST_CASE("bijective family: k-pick ratio equals the small-set ratio") {
    PipelineConfig cfg;
    cfg.n = 5;
    cfg.k = 2;
    cfg.q = 5;
    cfg.d = 1;
    cfg.m_small = 2;
    cfg.variant = PipelineVariant::k_sec_allperms;
    const auto r = build_pipeline(cfg);
    REQUIRE(r.multi_policy.has_value());
    const ValueAssignment v({3, 9, 1, 7, 5});
    const double big = expected_ratio(r.dist, v, *r.multi_policy);
    const double small = expected_ratio(OrderDistribution::all_permutations(5), v, *r.multi_policy);
    CHECK(std::abs(big - small) <= 1e-12);
}

TEST_CASE("derandomized pipeline builds a small support") {
    PipelineConfig cfg;
    cfg.n = 40;
    cfg.k = 3;
    cfg.q = 7;
    cfg.d = 1;
    cfg.eps = 0.5;
    cfg.variant = PipelineVariant::one_sec_derand;
    const int m0 = static_cast<int>(best_threshold(7).m_star);
    const auto r = build_pipeline(cfg);
    const int ell = lemma_ell_single(7, 3, mu_low_single(7, 3, m0), 0.5);
    CHECK(static_cast<int>(r.small.support_size()) == ell);
    CHECK(r.dist.support_size() == 7u * static_cast<std::size_t>(ell));
    CHECK(r.small_bound == doctest::Approx(coverage_check_single(r.small, 3, m0).min_fraction));
    CHECK(r.small_bound >= 0.5 * mu_low_single(7, 3, m0));

    cfg.ell_small = 6;  // far below the lemma's size: the estimator starts infeasible
    CHECK_THROWS_AS(build_pipeline(cfg), std::domain_error);
}
