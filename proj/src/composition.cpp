#include "secretary/composition.hpp"

#include <algorithm>
#include <stdexcept>

#include "secretary/analysis.hpp"
#include "secretary/derand.hpp"

namespace secretary {

Permutation compose_one(const std::vector<int>& f, int ell, const Permutation& pi) {
    if (pi.size() != ell) throw std::invalid_argument("small permutation size differs from family codomain");
    std::vector<int> start(ell + 1, 0);
    for (int v : f) ++start[v + 1];
    for (int b = 0; b < ell; ++b) start[b + 1] += start[b];
    std::vector<int> by_block(f.size());
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (int e = 0; e < static_cast<int>(f.size()); ++e) by_block[fill[f[e]]++] = e;  // ascending within block
    std::vector<int> order;
    order.reserve(f.size());
    for (int p = 0; p < ell; ++p) {
        const int b = pi.at(p);
        order.insert(order.end(), by_block.begin() + start[b], by_block.begin() + start[b + 1]);
    }
    return Permutation(std::move(order));
}

namespace {

OrderDistribution compose_impl(const ReductionFamily& fam, const OrderDistribution& small, bool parallel) {
    if (small.n() != fam.ell) throw std::invalid_argument("small distribution size differs from family codomain");
    if (!small.is_uniform()) throw std::invalid_argument("compose needs a uniform small distribution");
    if (fam.funcs.empty()) throw std::invalid_argument("family is empty");
    const OrderDistribution full = small.is_virtual() ? OrderDistribution::all_permutations(small.n()) : OrderDistribution{};
    const auto& L = small.is_virtual() ? full.support() : small.support();
    const std::int64_t F = fam.size(), S = static_cast<std::int64_t>(L.size());
    std::vector<Permutation> out(F * S);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t idx = 0; idx < F * S; ++idx) out[idx] = compose_one(fam.funcs[idx / S], fam.ell, L[idx % S]);
    } else {
        for (std::int64_t idx = 0; idx < F * S; ++idx) out[idx] = compose_one(fam.funcs[idx / S], fam.ell, L[idx % S]);
    }
    return OrderDistribution::uniform(std::move(out));
}

}  // namespace

OrderDistribution compose(const ReductionFamily& fam, const OrderDistribution& small) {
    return compose_impl(fam, small, true);
}

OrderDistribution compose_serial(const ReductionFamily& fam, const OrderDistribution& small) {
    return compose_impl(fam, small, false);
}

bool preserves_block_order(const std::vector<int>& f, const Permutation& pi, const Permutation& sigma) {
    const int n = static_cast<int>(f.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (f[i] == f[j]) continue;
            const bool blocks = pi.position_of(f[i]) < pi.position_of(f[j]);
            const bool elems = sigma.position_of(i) < sigma.position_of(j);
            if (blocks != elems) return false;
        }
    return true;
}

PipelineVariant parse_variant(const std::string& s) {
    if (s == "k-sec-allperms") return PipelineVariant::k_sec_allperms;
    if (s == "k-sec-derand") return PipelineVariant::k_sec_derand;
    if (s == "1-sec-allperms") return PipelineVariant::one_sec_allperms;
    if (s == "1-sec-derand") return PipelineVariant::one_sec_derand;
    throw std::invalid_argument("unknown pipeline variant '" + s + "'");
}

std::string variant_name(PipelineVariant v) {
    switch (v) {
        case PipelineVariant::k_sec_allperms: return "k-sec-allperms";
        case PipelineVariant::k_sec_derand: return "k-sec-derand";
        case PipelineVariant::one_sec_allperms: return "1-sec-allperms";
        case PipelineVariant::one_sec_derand: return "1-sec-derand";
    }
    return "?";
}

int scale_threshold(int m, int n, int ell) {
    const long long s = static_cast<long long>(m) * n / ell;
    return static_cast<int>(std::clamp<long long>(s, 1, n - 1));
}

PipelineResult build_pipeline(const PipelineConfig& cfg) {
    if (cfg.n < 4) throw std::invalid_argument("pipeline needs n >= 4");
    if (cfg.k < 1) throw std::invalid_argument("pipeline needs k >= 1");
    PipelineResult res;

    if (cfg.ell1 > 0) {
        res.family = build_product_code(cfg.n, cfg.ell1, cfg.ell2);
    } else {
        int q = cfg.q, d = cfg.d;
        if (q == 0) {
            const auto sp = suggest_params(cfg.n, ParamMode::single_log);
            q = sp.q;
            d = sp.d;
        } else if (d == 0) {
            d = 1;
            long long cap = q;
            while (cap * q < cfg.n) cap *= q, ++d;
        }
        res.family = build_single_code(cfg.n, q, d);
    }
    const int ell = res.family.ell;
    const int dcol = res.family.claimed_collision_bound;
    if (static_cast<long long>(ell) * ell * ell >= cfg.n)
        res.warnings.push_back("ell^2 >= n/ell: block-balance hypothesis of the composition does not hold at this scale");

    const bool single = cfg.variant == PipelineVariant::one_sec_allperms || cfg.variant == PipelineVariant::one_sec_derand;
    const bool derand = cfg.variant == PipelineVariant::one_sec_derand || cfg.variant == PipelineVariant::k_sec_derand;
    if (!derand && ell > 9) throw std::invalid_argument("all-permutation small sets are limited to ell <= 9");

    if (single) {
        const int m0 = cfg.m_small > 0 ? cfg.m_small : static_cast<int>(best_threshold(ell).m_star);
        if (derand) {
            const auto g = greedy_find_single(ell, cfg.k, m0, cfg.eps, cfg.ell_small);
            res.small = g.dist;
            res.small_bound = coverage_check_single(res.small, cfg.k, m0).min_fraction;
        } else {
            res.small = OrderDistribution::all_permutations(ell);
            res.small_bound = cond_prob_single_closed_form(ell, cfg.k, m0);
        }
        res.single_policy = SinglePolicy{scale_threshold(m0, cfg.n, ell)};
    } else {
        const int m = cfg.m_small > 0 ? cfg.m_small : std::max(1, ell / 2);
        if (derand) {
            const auto g = greedy_find_multi(ell, cfg.k, m, cfg.tau, cfg.eps, cfg.ell_small);
            res.small = g.dist;
            res.small_bound = (1.0 - cfg.eps) * rho_multi(ell, m, cfg.k).value;
        } else {
            res.small = OrderDistribution::all_permutations(ell);
            res.small_bound = rho_multi(ell, m, cfg.k).value;
        }
        MultiPolicy mp;
        mp.m = scale_threshold(m, cfg.n, ell);
        mp.tau = std::min(cfg.tau, mp.m);
        mp.k = std::min(cfg.k, cfg.n - mp.m);
        res.multi_policy = mp;
    }
    res.dist = compose(res.family, res.small);
    const double factor = 1.0 - static_cast<double>(cfg.k) * cfg.k * dcol / ell;
    res.predicted_ratio = factor * res.small_bound;
    res.vacuous = factor <= 0.0 || res.small_bound <= 0.0;
    return res;
}

}  // namespace secretary
