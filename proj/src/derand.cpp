#include "secretary/derand.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>

#include "secretary/analysis.hpp"
#include "secretary/io.hpp"

namespace secretary {

std::int64_t default_budget() {
    if (const char* s = std::getenv("ENTROPY_SECRETARY_BUDGET")) {
        char* end = nullptr;
        const long long v = std::strtoll(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return kDefaultBudget;
}

MultiTupleParams multi_tuple_params(int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    MultiTupleParams p;
    p.k = k;
    p.b = band_width(k);
    p.eps = std::clamp(std::log2(static_cast<double>(k)) / std::cbrt(static_cast<double>(k)), 0.0,
                       std::nextafter(1.0, 0.0));
    p.j0_slots = std::max(1, static_cast<int>(std::floor((1.0 - p.eps) * k + 1e-12)));
    p.band_lo = std::max(1, k - p.b);
    p.band_hi = k + p.b;
    return p;
}

TupleSpec make_single_tuple(std::vector<int> indices) {
    TupleSpec t;
    t.kind = TupleKind::single;
    t.k = static_cast<int>(indices.size());
    t.indices = std::move(indices);
    return t;
}

TupleSpec make_multi_tuple(std::vector<int> indices, int distinguished, int k) {
    const auto p = multi_tuple_params(k);
    if (static_cast<int>(indices.size()) != p.length())
        throw std::invalid_argument("multi tuple needs k + b = " + std::to_string(p.length()) + " entries");
    if (distinguished < 0 || distinguished >= p.j0_slots)
        throw std::invalid_argument("distinguished slot must lie in the first " + std::to_string(p.j0_slots) + " entries");
    TupleSpec t;
    t.kind = TupleKind::multi;
    t.indices = std::move(indices);
    t.distinguished = distinguished;
    t.k = k;
    t.band = p.b;
    return t;
}

namespace {

void check_distinct(const std::vector<int>& v, int n) {
    std::vector<char> seen(n, 0);
    for (int e : v) {
        if (e < 0 || e >= n) throw std::invalid_argument("tuple or prefix entry out of range");
        if (seen[e]) throw std::invalid_argument("tuple or prefix repeats an element");
        seen[e] = 1;
    }
}

std::int64_t falling(int n, int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > std::numeric_limits<std::int64_t>::max() / std::max(1, n - i)) return std::numeric_limits<std::int64_t>::max();
        r *= (n - i);
    }
    return r;
}

void enumerate_ordered(int n, int len, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> cur;
    std::vector<char> used(n, 0);
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == len) {
            visit(cur);
            return;
        }
        for (int e = 0; e < n; ++e) {
            if (used[e]) continue;
            used[e] = 1;
            cur.push_back(e);
            rec();
            cur.pop_back();
            used[e] = 0;
        }
    };
    rec();
}

long double binom(int a, int b) {
    if (b < 0 || a < 0 || b > a) return 0.0L;
    b = std::min(b, a - b);
    long double r = 1.0L;
    for (int i = 1; i <= b; ++i) r = r * static_cast<long double>(a - b + i) / static_cast<long double>(i);
    return r;
}

// pos[e] = fixed position of e, -1 when free; positions [0, r) are fixed.
double cond_single_pos(const std::vector<int>& idx, const std::vector<int>& pos, int r, int m0, int n) {
    const int k = static_cast<int>(idx.size());
    long double total = 0.0L;
    for (int t = 1; t < k; ++t) {  // event E_{t+1}: idx[t] holds the window maximum
        const int st = idx[t];
        if (r <= m0) {
            bool blocked = false;
            for (int j = 0; j < t && !blocked; ++j) blocked = pos[idx[j]] >= 0;
            if (blocked) continue;
            const int x = pos[st] < 0 ? 1 : 0;
            const int N = n - r, w = m0 - r;
            total += binom(N - x - t, w - x) / binom(N, w) / t;
        } else {
            if (pos[st] < 0 || pos[st] >= m0) continue;
            bool blocked = false;
            for (int j = 0; j < t && !blocked; ++j) blocked = pos[idx[j]] >= 0 && pos[idx[j]] < m0;
            if (blocked) continue;
            const int p0 = pos[idx[0]];
            bool ahead = false;  // another of idx[1..t-1] already arrived before idx[0]
            for (int j = 1; j < t && !ahead; ++j) ahead = pos[idx[j]] >= 0 && (p0 < 0 || pos[idx[j]] < p0);
            if (ahead) continue;
            total += p0 >= 0 ? 1.0L : 1.0L / t;
        }
    }
    return static_cast<double>(total);
}

double cond_multi_pos(const TupleSpec& tup, int u, const std::vector<int>& pos, int r, const MultiPolicy& pol, int n) {
    const auto& idx = tup.indices;
    const int jd = tup.distinguished;
    const int m = pol.m, tau = pol.tau, k = pol.k;
    if (jd > u - 2 || u < tau + 1) return 0.0;
    const int su = idx[u - 1], j0 = idx[jd];
    if (r <= m) {
        if (pos[j0] >= 0) return 0.0;
        int a = 0;
        for (int i = 0; i <= u - 2; ++i) a += pos[idx[i]] >= 0;
        const int need = tau - 1 - a;
        if (need < 0) return 0.0;
        const int x = pos[su] < 0 ? 1 : 0;
        const int free_other = (u - 2) - a;
        const int N = n - r, w = m - r;
        const int others = N - x - free_other - 1;
        const long double p = binom(free_other, need) * binom(others, w - x - need) / binom(N, w);
        return static_cast<double>(p * std::min(1.0L, static_cast<long double>(k) / (u - tau)));
    }
    if (pos[su] < 0 || pos[su] >= m) return 0.0;
    int inwin = 0;
    for (int i = 0; i <= u - 2; ++i) inwin += pos[idx[i]] >= 0 && pos[idx[i]] < m;
    if (inwin != tau - 1) return 0.0;
    if (pos[j0] >= 0 && pos[j0] < m) return 0.0;
    if (pos[j0] >= 0) {
        int before = 0;
        for (int i = 0; i <= u - 2; ++i)
            if (i != jd && pos[idx[i]] >= m && pos[idx[i]] < pos[j0]) ++before;
        return before < k ? 1.0 : 0.0;
    }
    int placed = 0;  // exceeders already arrived, all ahead of j0
    for (int i = 0; i <= u - 2; ++i) placed += pos[idx[i]] >= m;
    const int F = u - tau - placed;
    return static_cast<double>(std::clamp(k - placed, 0, F)) / F;
}

double cond_multi_total_pos(const TupleSpec& tup, const std::vector<int>& pos, int r, const MultiPolicy& pol, int n) {
    double s = 0.0;
    const int hi = std::min(tup.k + tup.band, static_cast<int>(tup.indices.size()));
    for (int u = std::max(1, tup.k - tup.band); u <= hi; ++u) s += cond_multi_pos(tup, u, pos, r, pol, n);
    return s;
}

std::vector<int> prefix_positions(const std::vector<int>& prefix, int n) {
    if (static_cast<int>(prefix.size()) > n) throw std::invalid_argument("prefix longer than n");
    check_distinct(prefix, n);
    std::vector<int> pos(n, -1);
    for (int i = 0; i < static_cast<int>(prefix.size()); ++i) pos[prefix[i]] = i;
    return pos;
}

void check_tuple(const TupleSpec& t, TupleKind kind, int n) {
    if (t.kind != kind) throw std::invalid_argument("tuple has the wrong kind");
    check_distinct(t.indices, n);
}

}  // namespace

std::vector<TupleSpec> enumerate_single_tuples(int n, int k) {
    if (k < 2 || k > n) throw std::invalid_argument("single tuples need 2 <= k <= n");
    std::vector<TupleSpec> out;
    out.reserve(static_cast<std::size_t>(falling(n, k)));
    enumerate_ordered(n, k, [&](const std::vector<int>& v) { out.push_back(make_single_tuple(v)); });
    return out;
}

std::vector<TupleSpec> enumerate_multi_tuples(int n, int k) {
    const auto p = multi_tuple_params(k);
    if (p.length() > n) throw std::invalid_argument("multi tuples need k + b <= n");
    std::vector<TupleSpec> out;
    enumerate_ordered(n, p.length(), [&](const std::vector<int>& v) {
        for (int j = 0; j < p.j0_slots; ++j) out.push_back(make_multi_tuple(v, j, k));
    });
    return out;
}

std::int64_t count_single_tuples(int n, int k) { return falling(n, k); }

std::int64_t count_multi_tuples(int n, int k) {
    const auto p = multi_tuple_params(k);
    const std::int64_t f = falling(n, p.length());
    return f > std::numeric_limits<std::int64_t>::max() / p.j0_slots ? std::numeric_limits<std::int64_t>::max()
                                                                      : f * p.j0_slots;
}

bool successful_single(const Permutation& perm, const TupleSpec& tuple, int m0) {
    check_tuple(tuple, TupleKind::single, perm.size());
    const auto& idx = tuple.indices;
    const int k = static_cast<int>(idx.size());
    for (int t = 1; t < k; ++t) {
        if (perm.position_of(idx[t]) >= m0) continue;
        bool ok = true;
        for (int j = 0; j < t && ok; ++j) ok = perm.position_of(idx[j]) >= m0;
        for (int j = 1; j < t && ok; ++j) ok = perm.position_of(idx[0]) < perm.position_of(idx[j]);
        if (ok) return true;
    }
    return false;
}

bool successful_multi_u(const Permutation& perm, const TupleSpec& tuple, int u, const MultiPolicy& policy) {
    const auto& idx = tuple.indices;
    const int jd = tuple.distinguished;
    const int m = policy.m;
    if (u < 1 || u > static_cast<int>(idx.size())) return false;
    if (jd > u - 2) return false;
    if (perm.position_of(idx[u - 1]) >= m) return false;
    int inwin = 0;
    for (int i = 0; i <= u - 2; ++i) inwin += perm.position_of(idx[i]) < m;
    if (inwin != policy.tau - 1) return false;
    const int pj = perm.position_of(idx[jd]);
    if (pj < m) return false;
    int before = 0;
    for (int i = 0; i <= u - 2; ++i)
        if (i != jd && perm.position_of(idx[i]) >= m && perm.position_of(idx[i]) < pj) ++before;
    return before < policy.k;
}

bool successful_multi(const Permutation& perm, const TupleSpec& tuple, const MultiPolicy& policy) {
    check_tuple(tuple, TupleKind::multi, perm.size());
    const auto p = multi_tuple_params(tuple.k);
    for (int u = p.band_lo; u <= std::min(p.band_hi, static_cast<int>(tuple.indices.size())); ++u)
        if (successful_multi_u(perm, tuple, u, policy)) return true;
    return false;
}

bool successful_multi_by_run(const Permutation& perm, const TupleSpec& tuple, const MultiPolicy& policy) {
    check_tuple(tuple, TupleKind::multi, perm.size());
    const int n = perm.size();
    const int len = static_cast<int>(tuple.indices.size());
    std::vector<double> v(n, -1.0);
    for (int i = 0; i < len; ++i) v[tuple.indices[i]] = 2.0 * n - i;
    int low = 0;
    for (int e = 0; e < n; ++e)
        if (v[e] < 0.0) v[e] = low++;
    const ValueAssignment values(std::move(v));
    MultiPolicy strict = policy;
    strict.comparison = Comparison::strict;
    strict.top_up = false;
    const auto out = run_multi(perm, values, strict);
    std::vector<int> win(policy.m);
    for (int p = 0; p < policy.m; ++p) win[p] = values.rank(perm.at(p));
    std::nth_element(win.begin(), win.begin() + (policy.tau - 1), win.end());
    const int stat_rank = win[policy.tau - 1];
    const auto p = multi_tuple_params(tuple.k);
    const int j0 = tuple.indices[tuple.distinguished];
    const bool picked = std::find(out.picked_elements.begin(), out.picked_elements.end(), j0) != out.picked_elements.end();
    return picked && stat_rank >= p.band_lo && stat_rank <= std::min(p.band_hi, len);
}

double cond_prob_single(const TupleSpec& tuple, const std::vector<int>& prefix, int m0, int n) {
    check_tuple(tuple, TupleKind::single, n);
    if (m0 < 1 || m0 > n - 1) throw std::invalid_argument("m0 must lie in [1, n-1]");
    const auto pos = prefix_positions(prefix, n);
    return cond_single_pos(tuple.indices, pos, static_cast<int>(prefix.size()), m0, n);
}

double cond_prob_multi(const TupleSpec& tuple, int u, const std::vector<int>& prefix, const MultiPolicy& policy, int n) {
    check_tuple(tuple, TupleKind::multi, n);
    validate(policy, n);
    const auto p = multi_tuple_params(tuple.k);
    if (u < p.band_lo || u > std::min(p.band_hi, static_cast<int>(tuple.indices.size())))
        throw std::invalid_argument("u outside the statistic band");
    const auto pos = prefix_positions(prefix, n);
    return cond_multi_pos(tuple, u, pos, static_cast<int>(prefix.size()), policy, n);
}

double cond_prob_multi_total(const TupleSpec& tuple, const std::vector<int>& prefix, const MultiPolicy& policy, int n) {
    check_tuple(tuple, TupleKind::multi, n);
    validate(policy, n);
    const auto pos = prefix_positions(prefix, n);
    return cond_multi_total_pos(tuple, pos, static_cast<int>(prefix.size()), policy, n);
}

double cond_prob_single_closed_form(int n, int k, int m0) {
    if (m0 < 1 || m0 > n - 1 || k < 2 || k > n) throw std::invalid_argument("closed form needs 1 <= m0 < n, 2 <= k <= n");
    long double total = 0.0L;
    for (int i = 2; i <= k; ++i) {
        long double p = static_cast<long double>(m0) / n;
        for (int j = 1; j <= i - 1; ++j)
            p *= static_cast<long double>(n - m0 - (j - 1)) / static_cast<long double>((n - 1) - (j - 1));
        total += p / (i - 1);
    }
    return static_cast<double>(total);
}

double brute_force_cond_prob(const std::function<bool(const Permutation&)>& pred, const std::vector<int>& prefix,
                             int n) {
    const auto pos = prefix_positions(prefix, n);
    const int r = static_cast<int>(prefix.size());
    if (n - r > kBruteForceFree) throw BudgetExceeded("brute force needs n - r <= 9");
    std::vector<int> rest;
    for (int e = 0; e < n; ++e)
        if (pos[e] < 0) rest.push_back(e);
    std::vector<int> order(prefix);
    order.resize(n);
    std::int64_t hit = 0, total = 0;
    do {
        std::copy(rest.begin(), rest.end(), order.begin() + r);
        hit += pred(Permutation(order));
        ++total;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return static_cast<double>(hit) / static_cast<double>(total);
}

int lemma_ell_single(int n, int k, double mu, double eps) {
    if (!(mu > 0.0) || !(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("lemma ell needs mu > 0, eps in (0,1)");
    return static_cast<int>(std::ceil(2.0 * k * std::log(static_cast<double>(n)) / (mu * eps * eps)));
}

int lemma_ell_multi(int n, int k, double mu, double delta) {
    if (!(mu > 0.0) || !(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("lemma ell needs mu > 0, delta in (0,1)");
    const auto p = multi_tuple_params(k);
    const double kp = p.length();
    const double num = kp * std::log(static_cast<double>(n)) + kp * std::log(kp) + std::log(static_cast<double>(p.j0_slots));
    return static_cast<int>(std::ceil(2.0 * num / (delta * delta * mu)));
}

double mu_low_single(int n, int k, int m0) {
    double mu = 1.0;
    for (const auto& t : enumerate_single_tuples(n, k)) mu = std::min(mu, cond_prob_single(t, {}, m0, n));
    return mu;
}

double mu_low_multi(int n, const MultiPolicy& policy) {
    double mu = 1.0;
    for (const auto& t : enumerate_multi_tuples(n, policy.k)) mu = std::min(mu, cond_prob_multi_total(t, {}, policy, n));
    return mu;
}

namespace {

// Method of conditional expectations over the pessimistic estimator
//   Phi = sum_S w(S) (1 - eps E[phi_{s+1}(S)]) (1 - eps mu)^(L-s-1) / (1 - eps)^((1-eps) mu L),
// w(S) = prod_{j<=s} (1 - eps phi_j(S)). Held in the log domain.
template <class Cond>
GreedyResult greedy_core(int n, const std::vector<TupleSpec>& tuples, int L, double eps, double mu, Cond cond,
                         const GreedyOptions& opt) {
    const std::int64_t T = static_cast<std::int64_t>(tuples.size());
    const std::int64_t budget = opt.budget < 0 ? default_budget() : opt.budget;
    const std::int64_t work = static_cast<std::int64_t>(std::max(0, L - 1)) * (static_cast<std::int64_t>(n) * (n + 1) / 2) * T;
    if (work > budget)
        throw BudgetExceeded("greedy needs about " + std::to_string(work) + " tuple evaluations, budget is " +
                             std::to_string(budget));

    GreedyResult res;
    res.ell = L;
    res.eps = eps;
    res.mu_low = mu;
    const double log_keep = std::log1p(-eps * mu);
    const double log_den = (1.0 - eps) * mu * L * std::log1p(-eps);

    std::vector<int> empty_pos(n, -1);
    std::vector<double> mu_s(T);
    for (std::int64_t i = 0; i < T; ++i) mu_s[i] = cond(tuples[i], empty_pos, 0);

    double acc = 0.0;
    for (double m : mu_s) acc += 1.0 - eps * m;
    res.phi_random = std::exp(std::log(acc) + (L - 1) * log_keep - log_den);

    std::vector<Permutation> perms{Permutation::identity(n)};
    std::vector<double> w(T);
    std::vector<std::int64_t> hits(T, 0);
    double log_scale = 0.0;  // true weight = w * exp(log_scale)
    {
        std::vector<int> id_pos(n);
        std::iota(id_pos.begin(), id_pos.end(), 0);
        for (std::int64_t i = 0; i < T; ++i) {
            const double phi = cond(tuples[i], id_pos, n);
            hits[i] += phi > 0.5;
            w[i] = 1.0 - eps * phi;
        }
    }
    auto log_phi = [&](double sum_w, double sum_we, int s) {
        return std::log(sum_w - eps * sum_we) + log_scale + (L - s - 1) * log_keep - log_den;
    };
    auto weight_sums = [&](const std::vector<double>& e) {
        double sw = 0.0, swe = 0.0;
        for (std::int64_t i = 0; i < T; ++i) sw += w[i], swe += w[i] * e[i];
        return std::pair{sw, swe};
    };

    double prev;
    {
        const auto [sw, swe] = weight_sums(mu_s);
        prev = log_phi(sw, swe, 1);
    }
    res.phi_start = std::exp(prev);
    res.trace.push_back({1, 0, -1, res.phi_start});
    if (opt.trace) *opt.trace << "# s r tau phi\n";
    if (L >= 2 && res.phi_start >= 1.0) {
        throw std::domain_error("pessimistic estimator starts at " + format_real(res.phi_start) +
                                " >= 1; increase ell");
    }

    std::vector<int> pos(n);
    for (int s = 1; s < L; ++s) {
        std::fill(pos.begin(), pos.end(), -1);
        std::vector<int> order;
        for (int r = 1; r <= n; ++r) {
            std::vector<int> cands;
            for (int e = 0; e < n; ++e)
                if (pos[e] < 0) cands.push_back(e);
            const int C = static_cast<int>(cands.size());
            std::vector<double> score(C, 0.0);
            auto eval = [&](int c, std::vector<int>& p) {
                p[cands[c]] = r - 1;
                double sc = 0.0;
                for (std::int64_t i = 0; i < T; ++i) sc += w[i] * cond(tuples[i], p, r);
                p[cands[c]] = -1;
                return sc;
            };
            if (opt.parallel && C > 1) {
#pragma omp parallel
                {
                    std::vector<int> p(pos);
#pragma omp for schedule(dynamic, 1)
                    for (int c = 0; c < C; ++c) score[c] = eval(c, p);
                }
            } else {
                std::vector<int> p(pos);
                for (int c = 0; c < C; ++c) score[c] = eval(c, p);
            }
            res.evaluations += static_cast<std::int64_t>(C) * T;
            int best = 0;
            for (int c = 1; c < C; ++c)
                if (score[c] > score[best]) best = c;
            pos[cands[best]] = r - 1;
            order.push_back(cands[best]);

            double sw = 0.0;
            for (double x : w) sw += x;
            const double lp = log_phi(sw, score[best], s);
            if (lp > prev + 1e-12) res.monotone = false;
            prev = lp;
            res.trace.push_back({s + 1, r, cands[best], std::exp(lp)});
            if (opt.trace) *opt.trace << s + 1 << ' ' << r << ' ' << cands[best] + 1 << ' ' << format_real(std::exp(lp)) << '\n';
        }
        perms.emplace_back(order);
        double wmax = 0.0;
        for (std::int64_t i = 0; i < T; ++i) {
            const double phi = cond(tuples[i], pos, n);
            hits[i] += phi > 0.5;
            w[i] *= 1.0 - eps * phi;
            wmax = std::max(wmax, w[i]);
        }
        if (wmax > 0.0 && wmax < 1e-200) {
            for (double& x : w) x /= wmax;
            log_scale += std::log(wmax);
        }
        if (s + 1 < L) {
            const auto [sw, swe] = weight_sums(mu_s);
            const double lp = log_phi(sw, swe, s + 1);
            if (lp > prev + 1e-12) res.monotone = false;
            prev = lp;
            res.trace.push_back({s + 2, 0, -1, std::exp(lp)});
        }
    }
    if (L >= 2) {
        double sw = 0.0;
        for (double x : w) sw += x;
        res.phi_final = std::exp(std::log(sw) + log_scale - log_den);
    } else {
        res.phi_final = res.phi_start;
    }
    res.min_successes = T ? *std::min_element(hits.begin(), hits.end()) : 0;
    res.target_met = static_cast<double>(res.min_successes) >= (1.0 - eps) * mu * L - 1e-9;
    res.dist = OrderDistribution::uniform(std::move(perms));
    return res;
}

}  // namespace

GreedyResult greedy_find_single(int n, int k, int m0, double eps_prime, int ell, const GreedyOptions& opt) {
    if (k < 3 || k >= n) throw std::invalid_argument("greedy_find_single needs 3 <= k < n");
    if (m0 < 1 || m0 > n - 1) throw std::invalid_argument("m0 must lie in [1, n-1]");
    if (!(eps_prime > 0.0 && eps_prime < 1.0)) throw std::invalid_argument("eps' must lie in (0, 1)");
    const std::int64_t budget = opt.budget < 0 ? default_budget() : opt.budget;
    if (count_single_tuples(n, k) > budget) throw BudgetExceeded("tuple count exceeds the work budget");
    const auto tuples = enumerate_single_tuples(n, k);
    double mu = 1.0;
    for (const auto& t : tuples) mu = std::min(mu, cond_prob_single(t, {}, m0, n));
    if (!(mu > 0.0)) throw std::invalid_argument("some tuple has zero success probability; no coverage target");
    const int L = ell > 0 ? ell : lemma_ell_single(n, k, mu, eps_prime);
    auto cond = [&](const TupleSpec& t, const std::vector<int>& pos, int r) {
        return cond_single_pos(t.indices, pos, r, m0, n);
    };
    try {
        return greedy_core(n, tuples, L, eps_prime, mu, cond, opt);
    } catch (const std::domain_error& e) {
        throw std::domain_error(std::string(e.what()) + " (lemma suggests ell >= " +
                                std::to_string(lemma_ell_single(n, k, mu, eps_prime)) + ")");
    }
}

GreedyResult greedy_find_multi(int n, int k, int m, int tau, double delta, int ell, const GreedyOptions& opt) {
    MultiPolicy pol;
    pol.m = m;
    pol.tau = tau;
    pol.k = k;
    validate(pol, n);
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    const std::int64_t budget = opt.budget < 0 ? default_budget() : opt.budget;
    if (count_multi_tuples(n, k) > budget) throw BudgetExceeded("tuple count exceeds the work budget");
    const auto tuples = enumerate_multi_tuples(n, k);
    double mu = 1.0;
    for (const auto& t : tuples) mu = std::min(mu, cond_prob_multi_total(t, {}, pol, n));
    if (!(mu > 0.0)) throw std::invalid_argument("some tuple has zero success probability; no coverage target");
    const int L = ell > 0 ? ell : lemma_ell_multi(n, k, mu, delta);
    auto cond = [&](const TupleSpec& t, const std::vector<int>& pos, int r) {
        return cond_multi_total_pos(t, pos, r, pol, n);
    };
    try {
        return greedy_core(n, tuples, L, delta, mu, cond, opt);
    } catch (const std::domain_error& e) {
        throw std::domain_error(std::string(e.what()) + " (lemma suggests ell >= " +
                                std::to_string(lemma_ell_multi(n, k, mu, delta)) + ")");
    }
}

namespace {

template <class Pred>
CoverageReport coverage_impl(const OrderDistribution& dist, const std::vector<TupleSpec>& tuples, std::int64_t budget,
                             Pred pred) {
    if (dist.is_virtual()) throw std::invalid_argument("coverage_check needs a materialized distribution");
    const auto& sup = dist.support();
    const std::int64_t T = static_cast<std::int64_t>(tuples.size());
    const std::int64_t b = budget < 0 ? default_budget() : budget;
    if (T * static_cast<std::int64_t>(sup.size()) > b) throw BudgetExceeded("coverage check exceeds the work budget");
    std::vector<double> frac(T, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < T; ++i) {
        if (dist.is_uniform()) {
            std::int64_t c = 0;
            for (const auto& p : sup) c += pred(p, tuples[i]);
            frac[i] = static_cast<double>(c) / static_cast<double>(sup.size());
        } else {
            double f = 0.0;
            for (std::size_t s = 0; s < sup.size(); ++s)
                if (pred(sup[s], tuples[i])) f += dist.weight(s);
            frac[i] = f;
        }
    }
    CoverageReport rep;
    rep.tuples = T;
    std::int64_t worst = 0;
    for (std::int64_t i = 1; i < T; ++i)
        if (frac[i] < frac[worst]) worst = i;
    rep.min_fraction = T ? frac[worst] : 1.0;
    if (T) rep.worst_tuple = tuples[worst];
    return rep;
}

}  // namespace

CoverageReport coverage_check_single(const OrderDistribution& dist, int k, int m0, std::int64_t budget) {
    const int n = dist.n();
    const std::int64_t b = budget < 0 ? default_budget() : budget;
    if (count_single_tuples(n, k) > b) throw BudgetExceeded("tuple count exceeds the work budget");
    return coverage_impl(dist, enumerate_single_tuples(n, k), b,
                         [&](const Permutation& p, const TupleSpec& t) { return successful_single(p, t, m0); });
}

CoverageReport coverage_check_multi(const OrderDistribution& dist, const MultiPolicy& policy, std::int64_t budget) {
    const int n = dist.n();
    validate(policy, n);
    const std::int64_t b = budget < 0 ? default_budget() : budget;
    if (count_multi_tuples(n, policy.k) > b) throw BudgetExceeded("tuple count exceeds the work budget");
    return coverage_impl(dist, enumerate_multi_tuples(n, policy.k), b,
                         [&](const Permutation& p, const TupleSpec& t) { return successful_multi(p, t, policy); });
}

}  // namespace secretary
