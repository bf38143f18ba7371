#pragma once

#include <vector>

#include "secretary/core.hpp"

namespace secretary {

// Observe positions [0, m0), then take the first later arrival beating the prefix max.
struct SinglePolicy {
    int m0 = 1;
};

enum class Comparison { strict, at_least };

struct MultiPolicy {
    int m = 1;
    int tau = 1;  // statistic = tau-th largest value in the window, counting multiplicity
    int k = 1;    // pick budget
    Comparison comparison = Comparison::strict;
    bool top_up = false;  // fill a short selection from the trailing positions
};

struct SingleOutcome {
    int picked_element = -1;
    bool success = false;
};

struct MultiOutcome {
    std::vector<int> picked_elements;  // in arrival order
    double total = 0.0;
};

void validate(const SinglePolicy& p, int n);
void validate(const MultiPolicy& p, int n);

SingleOutcome run_single(const Permutation& perm, const ValueAssignment& values, const SinglePolicy& policy);
MultiOutcome run_multi(const Permutation& perm, const ValueAssignment& values, const MultiPolicy& policy);

// Exact E[total] over the support (or all n! orders when virtual and n <= 10) divided by the top-k sum.
double expected_ratio(const OrderDistribution& dist, const ValueAssignment& values, const MultiPolicy& policy);

}  // namespace secretary
