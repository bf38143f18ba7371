#include <doctest.h>

#include <random>
#include <sstream>
#include <stdexcept>

#include "secretary/io.hpp"

using namespace secretary;

TEST_CASE("reals print with 12 significant digits") {
    CHECK(format_real(11.0 / 24.0) == "0.458333333333");
    CHECK(format_real(3.0) == "3");
    CHECK(format_real(1e-20) == "1e-20");
}

TEST_CASE("permutation files round-trip and are 1-based") {
    std::mt19937_64 rng(3);
    std::vector<Permutation> perms;
    for (int i = 0; i < 7; ++i) perms.push_back(random_permutation(9, rng));
    std::stringstream ss;
    write_permutations(ss, perms);
    const std::string text = ss.str();
    CHECK(text.rfind("n=9 count=7\n", 0) == 0);
    CHECK(read_permutations(ss) == perms);

    std::stringstream one;
    write_permutations(one, {Permutation::identity(3)});
    CHECK(one.str() == "n=3 count=1\n1 2 3\n");
}

TEST_CASE("comments and blank lines are skipped") {
    std::stringstream ss("# made by hand\n\nn=3 count=2\n# first\n3 1 2\n\n2 3 1\n");
    const auto p = read_permutations(ss);
    REQUIRE(p.size() == 2);
    CHECK(p[0].order() == std::vector<int>{2, 0, 1});
}

TEST_CASE("malformed permutation files are rejected") {
    auto bad = [](const std::string& s) {
        std::stringstream ss(s);
        return read_permutations(ss);
    };
    CHECK_THROWS_AS(bad(""), std::invalid_argument);
    CHECK_THROWS_AS(bad("count=1\n1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(bad("n=2 count=2\n1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(bad("n=2 count=1\n1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(bad("n=2 count=1\n1 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(bad("n=2 count=1\n1 x\n"), std::invalid_argument);
    CHECK_THROWS_AS(bad("n=2 count=1\n1 2\n2 1\n"), std::invalid_argument);
}

TEST_CASE("value files round-trip") {
    const ValueAssignment v({0.5, 1.25, -3.0, 1e-9, 123456.789});
    std::stringstream ss;
    write_values(ss, v, {"demo"});
    CHECK(ss.str().rfind("# demo\nn=5\n", 0) == 0);
    CHECK(read_values(ss) == v.values());
    std::stringstream bad("n=3\n1 2\n");
    CHECK_THROWS_AS(read_values(bad), std::invalid_argument);
}

TEST_CASE("weight files round-trip") {
    const std::vector<double> w{0.5, 0.25, 0.125, 0.125};
    std::stringstream ss;
    write_weights(ss, w);
    CHECK(read_weights(ss) == w);
}

TEST_CASE("family files round-trip") {
    ReductionFamily fam;
    fam.n = 4;
    fam.ell = 2;
    fam.funcs = {{0, 0, 1, 1}, {0, 1, 0, 1}};
    fam.claimed_collision_bound = 1;
    std::stringstream ss;
    write_family(ss, fam);
    CHECK(ss.str() == "n=4 l=2 count=2 d=1\n1 1 2 2\n1 2 1 2\n");
    const auto back = read_family(ss);
    CHECK(back.n == 4);
    CHECK(back.ell == 2);
    CHECK(back.claimed_collision_bound == 1);
    CHECK(back.funcs == fam.funcs);
    std::stringstream bad("n=2 l=2 count=1 d=1\n1 3\n");
    CHECK_THROWS_AS(read_family(bad), std::invalid_argument);
}

TEST_CASE("missing files are reported") {
    CHECK_THROWS_AS(read_permutations_file("/nonexistent/file.txt"), std::invalid_argument);
}
