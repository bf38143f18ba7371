#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "secretary/rs_families.hpp"

using namespace secretary;

namespace {

// Pairwise agreement count by direct comparison.
int collisions_oracle(const ReductionFamily& fam) {
    int best = 0;
    for (int i = 0; i < fam.n; ++i)
        for (int j = i + 1; j < fam.n; ++j) {
            int c = 0;
            for (const auto& f : fam.funcs) c += f[i] == f[j];
            best = std::max(best, c);
        }
    return best;
}

int naive_poly(const std::vector<int>& a, int x, int q) {
    long long s = 0, p = 1;
    for (int c : a) {
        p = p * x % q;
        s = (s + c * p) % q;
    }
    return static_cast<int>(s);
}

}  // namespace

TEST_CASE("primes") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(91));
    CHECK(next_prime(14) == 17);
    CHECK(next_prime(17) == 17);
    CHECK(next_prime(0) == 2);
}

TEST_CASE("lexicographic polynomial indexing") {
    CHECK(lex_poly(0, 2, 5) == std::vector<int>{0, 0});
    CHECK(lex_poly(1, 2, 5) == std::vector<int>{0, 1});
    CHECK(lex_poly(7, 2, 5) == std::vector<int>{1, 2});
    CHECK(lex_poly(24, 2, 5) == std::vector<int>{4, 4});
    CHECK_THROWS_AS(lex_poly(25, 2, 5), std::out_of_range);
}

TEST_CASE("Horner evaluation matches the power sum") {
    for (int q : {2, 3, 7, 13})
        for (int j = 0; j < q * q * q; ++j) {
            const auto a = lex_poly(j, 3, q);
            for (int x = 0; x < q; ++x) CHECK(eval_poly_mod(a, x, q) == naive_poly(a, x, q));
        }
}

TEST_CASE("single code on six elements") {
    const auto fam = build_single_code(6, 3, 1);
    REQUIRE(fam.size() == 3);
    CHECK(fam.ell == 3);
    CHECK(fam.funcs[0] == std::vector<int>{0, 1, 2, 0, 1, 2});
    CHECK(fam.funcs[1] == std::vector<int>{0, 1, 2, 1, 2, 0});
    CHECK(fam.funcs[2] == std::vector<int>{0, 1, 2, 2, 0, 1});
    CHECK(fam.claimed_collision_bound == 1);
}

TEST_CASE("single code is a permutation on every full block") {
    for (auto [n, q, d] : {std::tuple{25, 5, 1}, std::tuple{60, 7, 2}, std::tuple{125, 5, 2}, std::tuple{100, 11, 1}}) {
        const auto fam = build_single_code(n, q, d);
        CHECK(fam.size() == q);
        for (const auto& f : fam.funcs)
            for (int j = 0; (j + 1) * q <= n; ++j) {
                std::set<int> seen(f.begin() + j * q, f.begin() + (j + 1) * q);
                CHECK(static_cast<int>(seen.size()) == q);
            }
        const auto rep = verify_family(fam);
        CHECK(rep.ok);
        CHECK(rep.max_collisions == collisions_oracle(fam));
        CHECK(rep.max_collisions <= d);
        CHECK(rep.preimage_min >= n / q);
        CHECK(rep.preimage_max <= n / q + 1);
    }
}

TEST_CASE("single code at n = q is a family of bijections") {
    const auto fam = build_single_code(7, 7, 2);
    for (const auto& f : fam.funcs) {
        std::set<int> seen(f.begin(), f.end());
        CHECK(seen.size() == 7u);
    }
}

TEST_CASE("single code parameter validation") {
    CHECK_THROWS_AS(build_single_code(10, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_single_code(10, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_single_code(10, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(build_single_code(26, 5, 1), std::invalid_argument);
}

TEST_CASE("verification catches a crafted violation") {
    auto fam = build_single_code(9, 3, 1);
    fam.funcs[1][4] = fam.funcs[1][0];
    fam.funcs[2][4] = fam.funcs[2][0];
    const auto rep = verify_family(fam);
    CHECK_FALSE(rep.ok);
    CHECK(rep.max_collisions >= 2);

    ReductionFamily constant;
    constant.n = 5;
    constant.ell = 2;
    constant.funcs.assign(4, std::vector<int>(5, 1));
    constant.claimed_collision_bound = 1;
    constant.preimage_hi = 5;
    const auto c = verify_family(constant);
    CHECK(c.max_collisions == 4);
    CHECK(c.preimage_min == 0);
    CHECK(c.preimage_max == 5);
    CHECK_FALSE(c.ok);

    ReductionFamily bad = constant;
    bad.funcs[0][0] = 2;
    CHECK_THROWS_AS(verify_family(bad), std::invalid_argument);
}

TEST_CASE("distinct polynomials agree on at most d points") {
    const int q = 7, d = 3;
    for (int a = 0; a < 60; ++a)
        for (int b = a + 1; b < 60; ++b) {
            const auto ga = lex_poly(a * 5, d, q), gb = lex_poly(b * 5 + 1, d, q);
            if (ga == gb) continue;
            int agree = 0;
            for (int x = 0; x < q; ++x) agree += eval_poly_mod(ga, x, q) == eval_poly_mod(gb, x, q);
            CHECK(agree <= d);
        }
}

TEST_CASE("product code") {
    const auto fam = build_product_code(9, 3, 2);
    CHECK(fam.size() == 6);
    CHECK(fam.ell == 2);
    CHECK(product_degree(3) == 2);
    CHECK(product_degree(101) == 11);
    CHECK(product_degree(2) == 1);
    CHECK_THROWS_AS(build_product_code(9, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_product_code(9, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_product_code(9, 4, 3), std::invalid_argument);

    const auto big = build_product_code(500, 31, 5);
    CHECK(big.size() == 31 * 5);
    const auto rep = verify_family(big);
    CHECK(rep.ok);
    CHECK(rep.max_collisions == collisions_oracle(big));
}

TEST_CASE("parameter suggestions") {
    const auto a = suggest_params(1 << 16, ParamMode::single_log);
    CHECK(a.q == 17);
    CHECK(a.d == 3);
    const auto b = suggest_params(16, ParamMode::single_log);
    CHECK(b.q == 5);
    CHECK(b.d == 1);
    CHECK_THROWS_AS(suggest_params(8, ParamMode::double_loglog), std::invalid_argument);
    CHECK_THROWS_AS(suggest_params(3, ParamMode::single_log), std::invalid_argument);
    const auto c = suggest_params(1 << 20, ParamMode::double_loglog);
    CHECK(is_prime(c.ell1));
    CHECK(is_prime(c.ell2));
    CHECK(c.ell2 < c.ell1);
    CHECK_NOTHROW(build_product_code(1 << 12, c.ell1, c.ell2));
}

TEST_CASE("verification: serial reference equals the parallel kernel; guard") {
    const auto fam = build_single_code(2000, 13, 3);
    const auto a = verify_family(fam), b = verify_family_serial(fam);
    CHECK(a.max_collisions == b.max_collisions);
    CHECK(a.preimage_min == b.preimage_min);
    CHECK(a.preimage_max == b.preimage_max);
    CHECK(a.ok == b.ok);

    const auto huge = build_single_code(10001, 23, 2);
    CHECK_THROWS_AS(verify_family(huge), std::length_error);
    CHECK(verify_family(huge, false).ok);
}
