#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace secretary {

// Maps [n] -> [ell]; funcs[f][e] is 0-based on both sides.
struct ReductionFamily {
    int n = 0;
    int ell = 0;
    std::vector<std::vector<int>> funcs;
    int claimed_collision_bound = 0;
    int preimage_lo = 0;
    int preimage_hi = 0;

    int size() const { return static_cast<int>(funcs.size()); }
};

struct FamilyReport {
    int max_collisions = 0;
    int preimage_min = 0;
    int preimage_max = 0;
    bool collisions_checked = true;
    bool ok = false;
};

inline constexpr int kVerifyGuard = 10000;

bool is_prime(std::int64_t x);
std::int64_t next_prime(std::int64_t x);  // smallest prime >= x

// Polynomial of degree <= d with zero constant term; coeffs[t-1] multiplies x^t.
int eval_poly_mod(const std::vector<int>& coeffs, int x, int q);
// The j-th member of G in lexicographic order of (a1, ..., ad), a1 most significant.
std::vector<int> lex_poly(std::int64_t j, int d, int q);

ReductionFamily build_single_code(int n, int q, int d);

// d_i = min(ceil(sqrt(ell_i)), ell_i - 1); F = {f2 o f1}, f1-index major.
ReductionFamily build_product_code(int n, int ell1, int ell2);
int product_degree(int ell);

// Collision count over all pairs is O(n^2 |F|) and refused above kVerifyGuard.
FamilyReport verify_family(const ReductionFamily& fam, bool check_collisions = true);
FamilyReport verify_family_serial(const ReductionFamily& fam, bool check_collisions = true);

enum class ParamMode { single_log, double_loglog };

struct SuggestedParams {
    ParamMode mode = ParamMode::single_log;
    int q = 0;  // single-log
    int d = 0;
    int ell1 = 0;  // double-loglog
    int ell2 = 0;
    int d1 = 0;
    int d2 = 0;
};

SuggestedParams suggest_params(std::int64_t n, ParamMode mode);

}  // namespace secretary
