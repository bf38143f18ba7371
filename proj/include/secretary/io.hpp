#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "secretary/core.hpp"
#include "secretary/rs_families.hpp"

namespace secretary {

// Text formats. Lines starting with '#' are comments and are skipped on read.
//   permutation multiset: "n=<n> count=<l>", then l lines of n 1-based elements
//   value assignment:     "n=<n>", then n reals in element order
//   weights:              l reals
//   function family:      "n=<n> l=<ell> count=<m> d=<d>", then m lines of n values in [1, ell]

// Reals are written with 12 significant digits.
std::string format_real(double x);

void write_permutations(std::ostream& out, const std::vector<Permutation>& perms);
std::vector<Permutation> read_permutations(std::istream& in);

void write_values(std::ostream& out, const ValueAssignment& values, const std::vector<std::string>& comments = {});
std::vector<double> read_values(std::istream& in);

void write_weights(std::ostream& out, const std::vector<double>& weights);
std::vector<double> read_weights(std::istream& in);

void write_family(std::ostream& out, const ReductionFamily& fam);
// Bounds other than d are not stored; they come back as [0, n].
ReductionFamily read_family(std::istream& in);

std::vector<Permutation> read_permutations_file(const std::string& path);
std::vector<double> read_values_file(const std::string& path);
std::vector<double> read_weights_file(const std::string& path);
ReductionFamily read_family_file(const std::string& path);

}  // namespace secretary
