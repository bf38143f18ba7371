#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secretary/core.hpp"
#include "secretary/policies.hpp"
#include "secretary/rs_families.hpp"

namespace secretary {

// Blocks f^{-1}(b) listed in the order pi gives the blocks, ascending element index inside a block.
Permutation compose_one(const std::vector<int>& f, int ell, const Permutation& pi);

// Support {pi o f}, f-index major, pi-index minor; uniform weights. small must be uniform over Pi_ell.
OrderDistribution compose(const ReductionFamily& fam, const OrderDistribution& small);
OrderDistribution compose_serial(const ReductionFamily& fam, const OrderDistribution& small);

// For all cross-block pairs: ind_pi(f(i)) < ind_pi(f(j)) <=> ind_sigma(i) < ind_sigma(j).
bool preserves_block_order(const std::vector<int>& f, const Permutation& pi, const Permutation& sigma);

enum class PipelineVariant { k_sec_allperms, k_sec_derand, one_sec_allperms, one_sec_derand };

PipelineVariant parse_variant(const std::string& s);
std::string variant_name(PipelineVariant v);

struct PipelineConfig {
    int n = 0;
    int k = 1;
    PipelineVariant variant = PipelineVariant::one_sec_allperms;
    // Family: a single code (q, d), or a product (ell1, ell2) when ell1 > 0. Zero q means suggest_params.
    int q = 0;
    int d = 0;
    int ell1 = 0;
    int ell2 = 0;
    // Small-side threshold; 0 picks best_threshold(ell) for 1-secretary and ell/2 otherwise.
    int m_small = 0;
    int tau = 1;
    double eps = 0.4;     // eps' or delta for the derandomized variants
    int ell_small = 0;    // number of derandomized small permutations; 0 = lemma-driven
};

struct PipelineResult {
    ReductionFamily family;
    OrderDistribution small;
    OrderDistribution dist;
    std::optional<SinglePolicy> single_policy;
    std::optional<MultiPolicy> multi_policy;
    double small_bound = 0.0;       // success probability / coverage target on the small side
    double predicted_ratio = 0.0;   // (1 - k^2 d / ell) * small_bound
    bool vacuous = false;
    std::vector<std::string> warnings;
};

// Threshold ⌊m n / ell⌋.
int scale_threshold(int m, int n, int ell);

PipelineResult build_pipeline(const PipelineConfig& cfg);

}  // namespace secretary
