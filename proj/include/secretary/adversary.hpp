#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "secretary/core.hpp"
#include "secretary/policies.hpp"

namespace secretary {

// Each element's position is the min or the max among the positions of it and all earlier elements,
// in every permutation of `against`.
struct SemitoneSequence {
    std::vector<int> elements;
    std::vector<Permutation> against;
};

bool is_semitone(const std::vector<int>& seq, const Permutation& perm);

class SemitoneNotFound : public std::runtime_error {
public:
    SemitoneNotFound(const std::string& what, std::vector<int> best)
        : std::runtime_error(what), best_(std::move(best)) {}
    int achieved() const { return static_cast<int>(best_.size()); }
    const std::vector<int>& best() const { return best_; }

private:
    std::vector<int> best_;
};

inline constexpr int kSemitoneExhaustiveN = 16;

// Largest side-vector cell greedy; exhaustive search when it stalls and n <= 16.
// Throws SemitoneNotFound carrying the longest sequence found.
SemitoneSequence find_semitone(const std::vector<Permutation>& perms, int target_len);

// Values are base^exponent with base = k / (1 - eps). Sequence elements get distinct exponents
// >= 0 drawn from {0, .., 2^s - 2}; every other element gets exponent -1, i.e. value (1 - eps) / k.
struct HardAssignment {
    std::vector<std::int64_t> exponents;
    double base = 0.0;
    int k = 0;
    double eps = 0.0;
    int s = 0;
    // Exponent-valued assignment (same order as the true values, ties allowed).
    ValueAssignment order_values() const;
    double log_value(int e) const;  // natural log of the true value
};

inline constexpr int kMaxHardLength = 53;  // exponents stay exact in a double

HardAssignment hard_assignment_sample(const SemitoneSequence& seq, int n, int k, double eps, std::uint64_t seed);

struct CaptureReport {
    double frequency = 0.0;  // fraction of samples whose picks include the top element
    double bound = 0.0;      // k / s
    double sigma = 0.0;
    std::int64_t samples = 0;
};

// Draws a hard assignment and a uniformly chosen permutation of seq.against per sample.
CaptureReport hard_capture_frequency(const SemitoneSequence& seq, int n, const MultiPolicy& policy, double eps,
                                     std::int64_t samples, std::uint64_t seed);
CaptureReport hard_capture_frequency_serial(const SemitoneSequence& seq, int n, const MultiPolicy& policy, double eps,
                                            std::int64_t samples, std::uint64_t seed);

enum class KillerBranch { isolated_element, k_set };

struct KillerResult {
    ValueAssignment values;
    KillerBranch branch = KillerBranch::isolated_element;
    std::vector<int> special;      // the isolated element, or the K-set
    int permutations_used = 0;     // k_set branch: permutations consumed before |K| = k
    bool exhausted = false;        // k_set branch: ran out of permutations and topped up
};

inline constexpr double kNegligibleValue = 1e-9;

// l (m + k) < n: one element outside every prefix of length m + k gets 1, the rest (1 - eps) / k.
// Otherwise m >= k is required: K collects ceil(eps k) fresh window elements per permutation; K gets 1, the rest kNegligibleValue.
KillerResult wait_and_pick_killer(const std::vector<Permutation>& perms, int m, int k, double eps);

}  // namespace secretary
