#include "secretary/rs_families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace secretary {

bool is_prime(std::int64_t x) {
    if (x < 2) return false;
    if (x % 2 == 0) return x == 2;
    for (std::int64_t p = 3; p * p <= x; p += 2)
        if (x % p == 0) return false;
    return true;
}

std::int64_t next_prime(std::int64_t x) {
    if (x < 2) return 2;
    while (!is_prime(x)) ++x;
    return x;
}

int eval_poly_mod(const std::vector<int>& coeffs, int x, int q) {
    // Horner over a_d, ..., a_1, then one more multiply for the zero constant term.
    std::int64_t acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * x + *it) % q;
    return static_cast<int>(acc * x % q);
}

std::vector<int> lex_poly(std::int64_t j, int d, int q) {
    std::vector<int> a(d);
    for (int t = d - 1; t >= 0; --t) {
        a[t] = static_cast<int>(j % q);
        j /= q;
    }
    if (j != 0) throw std::out_of_range("polynomial index exceeds q^d");
    return a;
}

namespace {

// q^e, saturating at limit + 1.
std::int64_t pow_capped(std::int64_t q, int e, std::int64_t limit) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > limit / q) return limit + 1;
        r *= q;
    }
    return r;
}

int ceil_sqrt(int x) {
    int r = static_cast<int>(std::sqrt(static_cast<double>(x)));
    while (r * r < x) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= x) --r;
    return r;
}

template <class T>
int max_collisions_t(const ReductionFamily& fam, bool parallel) {
    const int n = fam.n;
    const int F = fam.size();
    std::vector<T> vals(static_cast<std::size_t>(n) * F);
    for (int f = 0; f < F; ++f)
        for (int e = 0; e < n; ++e) vals[static_cast<std::size_t>(e) * F + f] = static_cast<T>(fam.funcs[f][e]);

    int best = 0;
    auto row = [&](int i) {
        int local = 0;
        const T* a = &vals[static_cast<std::size_t>(i) * F];
        for (int j = i + 1; j < n; ++j) {
            const T* b = &vals[static_cast<std::size_t>(j) * F];
            int c = 0;
            for (int f = 0; f < F; ++f) c += (a[f] == b[f]);
            local = std::max(local, c);
        }
        return local;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
        for (int i = 0; i < n; ++i) best = std::max(best, row(i));
    } else {
        for (int i = 0; i < n; ++i) best = std::max(best, row(i));
    }
    return best;
}

FamilyReport verify_impl(const ReductionFamily& fam, bool check_collisions, bool parallel) {
    if (fam.n < 1 || fam.ell < 1) throw std::invalid_argument("family must have n >= 1 and ell >= 1");
    for (const auto& f : fam.funcs) {
        if (static_cast<int>(f.size()) != fam.n) throw std::invalid_argument("family function has wrong length");
        for (int v : f)
            if (v < 0 || v >= fam.ell) throw std::invalid_argument("family value outside [1, ell]");
    }
    FamilyReport rep;
    rep.preimage_min = fam.n;
    rep.preimage_max = 0;
    std::vector<int> count(fam.ell);
    for (const auto& f : fam.funcs) {
        std::fill(count.begin(), count.end(), 0);
        for (int v : f) ++count[v];
        for (int c : count) {
            rep.preimage_min = std::min(rep.preimage_min, c);
            rep.preimage_max = std::max(rep.preimage_max, c);
        }
    }
    rep.collisions_checked = check_collisions;
    if (check_collisions) {
        if (fam.n > kVerifyGuard) throw std::length_error("verify_family collision check is limited to n <= 10000");
        rep.max_collisions = fam.ell <= 256 ? max_collisions_t<std::uint8_t>(fam, parallel)
                                            : max_collisions_t<std::uint16_t>(fam, parallel);
    }
    rep.ok = rep.preimage_min >= fam.preimage_lo && rep.preimage_max <= fam.preimage_hi &&
             (!check_collisions || rep.max_collisions <= fam.claimed_collision_bound);
    return rep;
}

}  // namespace

FamilyReport verify_family(const ReductionFamily& fam, bool check_collisions) {
    return verify_impl(fam, check_collisions, true);
}

FamilyReport verify_family_serial(const ReductionFamily& fam, bool check_collisions) {
    return verify_impl(fam, check_collisions, false);
}

ReductionFamily build_single_code(int n, int q, int d) {
    if (!is_prime(q)) throw std::invalid_argument("q must be prime, got " + std::to_string(q));
    if (d < 1 || d >= q) throw std::invalid_argument("d must satisfy 1 <= d < q");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (pow_capped(q, d + 1, n) < n) throw std::invalid_argument("n exceeds q^(d+1)");

    ReductionFamily fam;
    fam.n = n;
    fam.ell = q;
    fam.claimed_collision_bound = d;
    fam.preimage_lo = n / q;
    fam.preimage_hi = n / q + 1;
    fam.funcs.assign(q, std::vector<int>(n));
    const int blocks = (n + q - 1) / q;
    for (int j = 0; j < blocks; ++j) {
        const auto g = lex_poly(j, d, q);
        for (int x = 0; x < q; ++x) {
            const int gx = eval_poly_mod(g, x, q);
            for (int i = 0; i < q && j * q + i < n; ++i) fam.funcs[x][j * q + i] = (gx + i) % q;
        }
    }
    const auto rep = verify_family(fam, n <= kVerifyGuard);
    if (!rep.ok) throw std::logic_error("single-code construction failed its own verification");
    return fam;
}

int product_degree(int ell) { return std::min(ceil_sqrt(ell), ell - 1); }

ReductionFamily build_product_code(int n, int ell1, int ell2) {
    if (!is_prime(ell1) || !is_prime(ell2)) throw std::invalid_argument("ell1 and ell2 must be prime");
    if (ell2 >= ell1) throw std::invalid_argument("ell2 must be smaller than ell1");
    const int d1 = product_degree(ell1);
    const int d2 = product_degree(ell2);
    if (pow_capped(ell1, d1, n) < n) throw std::invalid_argument("need ell1^d1 >= n");
    if (pow_capped(ell2, d2 + 1, ell1) < ell1) throw std::invalid_argument("need ell1 <= ell2^(d2+1)");

    ReductionFamily f1;
    f1.n = n;
    f1.ell = ell1;
    f1.funcs.assign(ell1, std::vector<int>(n));
    const int blocks = (n + ell1 - 1) / ell1;
    for (int j = 0; j < blocks; ++j) {
        const auto g = lex_poly(j, d1, ell1);
        for (int x = 0; x < ell1; ++x) {
            const int gx = eval_poly_mod(g, x, ell1);
            for (int i = 0; i < ell1 && j * ell1 + i < n; ++i) f1.funcs[x][j * ell1 + i] = (gx + i) % ell1;
        }
    }
    const ReductionFamily f2 = build_single_code(ell1, ell2, d2);

    ReductionFamily fam;
    fam.n = n;
    fam.ell = ell2;
    fam.claimed_collision_bound = ell2 * d1 + ell1 * d2;
    fam.preimage_lo = 0;
    fam.preimage_hi = n / ell2 + 3 * (n / ell1);
    fam.funcs.reserve(static_cast<std::size_t>(ell1) * ell2);
    for (const auto& a : f1.funcs) {
        for (const auto& b : f2.funcs) {
            std::vector<int> f(n);
            for (int e = 0; e < n; ++e) f[e] = b[a[e]];
            fam.funcs.push_back(std::move(f));
        }
    }
    return fam;
}

SuggestedParams suggest_params(std::int64_t n, ParamMode mode) {
    if (n < 4) throw std::invalid_argument("suggest_params needs n >= 4");
    SuggestedParams sp;
    sp.mode = mode;
    const double lg = std::log2(static_cast<double>(n));
    if (mode == ParamMode::single_log) {
        sp.q = static_cast<int>(next_prime(static_cast<std::int64_t>(std::ceil(lg - 1e-12))));
        sp.d = 1;
        while (pow_capped(sp.q, sp.d + 1, n) < n) ++sp.d;
        if (sp.d >= sp.q) throw std::invalid_argument("no d < q reaches q^(d+1) >= n");
        return sp;
    }
    const double llg = std::log2(lg);
    if (llg < 2.0) throw std::invalid_argument("double-loglog mode needs log2 log2 n >= 2");
    sp.ell2 = static_cast<int>(next_prime(static_cast<std::int64_t>(std::ceil(llg - 1e-12))));
    sp.d2 = product_degree(sp.ell2);
    const std::int64_t top = pow_capped(sp.ell2, sp.d2, 1LL << 40);
    // Largest prime in [top/2, top]; larger ell1 makes ell1^d1 >= n easiest.
    std::int64_t p = top;
    while (2 * p >= top && !is_prime(p)) --p;
    if (2 * p < top || p <= sp.ell2) throw std::invalid_argument("no usable prime ell1 in [ell2^d2 / 2, ell2^d2]");
    sp.ell1 = static_cast<int>(p);
    sp.d1 = product_degree(sp.ell1);
    if (pow_capped(sp.ell1, sp.d1, n) < n) throw std::invalid_argument("suggested ell1^d1 falls short of n");
    return sp;
}

}  // namespace secretary
