#include "secretary/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "secretary/parallel.hpp"

namespace secretary {

bool is_semitone(const std::vector<int>& seq, const Permutation& perm) {
    if (seq.size() <= 1) return true;
    int lo = perm.position_of(seq[0]), hi = lo;
    for (std::size_t t = 1; t < seq.size(); ++t) {
        const int p = perm.position_of(seq[t]);
        if (p < lo) {
            lo = p;
        } else if (p > hi) {
            hi = p;
        } else {
            return false;
        }
    }
    return true;
}

namespace {

using Mask = std::uint64_t;

struct SemitoneState {
    const std::vector<Permutation>* perms_;
    int n;
    std::vector<int> lo, hi;  // chosen position interval per permutation; lo > hi when empty
    std::vector<char> used;

    SemitoneState(const std::vector<Permutation>& p, int n_)
        : perms_(&p), n(n_), lo(p.size(), n_), hi(p.size(), -1), used(n_, 0) {}

    const std::vector<Permutation>& perms() const { return *perms_; }
    bool empty() const { return hi[0] < 0; }

    // -1 when e sits inside some interval, else bit i set when e lies after interval i.
    std::int64_t side(int e) const {
        if (used[e]) return -1;
        if (empty()) return 0;
        Mask m = 0;
        for (std::size_t i = 0; i < perms().size(); ++i) {
            const int p = perms()[i].position_of(e);
            if (p > hi[i]) {
                m |= Mask{1} << i;
            } else if (p >= lo[i]) {
                return -1;
            }
        }
        return static_cast<std::int64_t>(m);
    }

    void push(int e) {
        used[e] = 1;
        for (std::size_t i = 0; i < perms().size(); ++i) {
            const int p = perms()[i].position_of(e);
            lo[i] = std::min(lo[i], p);
            hi[i] = std::max(hi[i], p);
        }
    }

    // Cells of candidates keyed by side vector.
    std::unordered_map<std::int64_t, std::vector<int>> cells() const {
        std::unordered_map<std::int64_t, std::vector<int>> out;
        for (int e = 0; e < n; ++e) {
            const auto s = side(e);
            if (s >= 0) out[s].push_back(e);
        }
        return out;
    }

    // (largest cell, total candidates) after adding e.
    std::pair<int, int> score_after(int e) const {
        SemitoneState next = *this;
        next.push(e);
        std::unordered_map<std::int64_t, int> count;
        int total = 0, best = 0;
        for (int y = 0; y < n; ++y) {
            const auto s = next.side(y);
            if (s < 0) continue;
            ++total;
            best = std::max(best, ++count[s]);
        }
        return {best, total};
    }
};

constexpr std::size_t kSemitoneSample = 256;

bool exhaustive_extend(SemitoneState& st, std::vector<int>& seq, int target, std::vector<int>& best) {
    if (seq.size() > best.size()) best = seq;
    if (static_cast<int>(seq.size()) >= target) return true;
    for (int e = 0; e < st.n; ++e) {
        if (st.side(e) < 0) continue;
        SemitoneState saved = st;
        st.push(e);
        seq.push_back(e);
        if (exhaustive_extend(st, seq, target, best)) return true;
        seq.pop_back();
        st = saved;
    }
    return false;
}

}  // namespace

SemitoneSequence find_semitone(const std::vector<Permutation>& perms, int target_len) {
    if (perms.empty()) throw std::invalid_argument("find_semitone needs at least one permutation");
    if (perms.size() > 64) throw std::invalid_argument("find_semitone supports at most 64 permutations");
    if (target_len < 1) throw std::invalid_argument("target length must be >= 1");
    const int n = perms[0].size();
    for (const auto& p : perms)
        if (p.size() != n) throw std::invalid_argument("permutations differ in size");

    SemitoneState st(perms, n);
    std::vector<int> seq;
    while (static_cast<int>(seq.size()) < target_len) {
        const auto cells = st.cells();
        if (cells.empty()) break;
        const std::vector<int>* cell = nullptr;
        std::int64_t cell_key = 0;
        for (const auto& [key, members] : cells)
            if (!cell || members.size() > cell->size() || (members.size() == cell->size() && key < cell_key)) {
                cell = &members;
                cell_key = key;
            }
        // Evaluate an evenly spaced sample of the cell; members are in ascending element order.
        const std::size_t stride = std::max<std::size_t>(1, cell->size() / kSemitoneSample);
        int pick = -1;
        std::pair<int, int> best{-1, -1};
        for (std::size_t i = 0; i < cell->size(); i += stride) {
            const auto sc = st.score_after((*cell)[i]);
            if (sc > best) best = sc, pick = (*cell)[i];
        }
        st.push(pick);
        seq.push_back(pick);
    }
    if (static_cast<int>(seq.size()) < target_len) {
        std::vector<int> best = seq;
        bool found = false;
        if (n <= kSemitoneExhaustiveN) {
            SemitoneState fresh(perms, n);
            std::vector<int> cur;
            std::vector<int> ex_best;
            found = exhaustive_extend(fresh, cur, target_len, ex_best);
            if (ex_best.size() > best.size()) best = ex_best;
            if (found) seq = cur;
        }
        if (!found)
            throw SemitoneNotFound("semitone target " + std::to_string(target_len) + " unreachable; achieved " +
                                       std::to_string(best.size()),
                                   best);
    }
    for (const auto& p : perms)
        if (!is_semitone(seq, p)) throw std::logic_error("find_semitone produced a non-semitone sequence");
    return SemitoneSequence{seq, perms};
}

ValueAssignment HardAssignment::order_values() const {
    std::vector<double> v(exponents.begin(), exponents.end());
    return ValueAssignment(std::move(v), true);
}

double HardAssignment::log_value(int e) const {
    return static_cast<double>(exponents.at(e)) * std::log(base);
}

HardAssignment hard_assignment_sample(const SemitoneSequence& seq, int n, int k, double eps, std::uint64_t seed) {
    const int s = static_cast<int>(seq.elements.size());
    if (s < 1) throw std::invalid_argument("hard assignment needs a non-empty sequence");
    if (s > kMaxHardLength) throw std::invalid_argument("hard assignment supports sequences of length <= 53");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
    HardAssignment h;
    h.exponents.assign(n, -1);
    h.base = k / (1.0 - eps);
    h.k = k;
    h.eps = eps;
    h.s = s;
    for (int e : seq.elements) {
        if (e < 0 || e >= n) throw std::invalid_argument("sequence element out of range");
        if (h.exponents[e] != -1) throw std::invalid_argument("sequence repeats an element");
        h.exponents[e] = -2;
    }
    std::mt19937_64 rng(seed);
    // Current interval of pool exponents starts at lo and holds 2^t - 1 entries at level t.
    std::int64_t lo = 0;
    for (int t = s; t >= 1; --t) {
        const std::int64_t med = lo + (std::int64_t{1} << (t - 1)) - 1;
        h.exponents[seq.elements[t - 1]] = med;
        if (t == 1) break;
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u >= 1.0 / t) lo = med + 1;  // else keep the lower half [lo, med)
    }
    return h;
}

namespace {

CaptureReport capture_impl(const SemitoneSequence& seq, int n, const MultiPolicy& policy, double eps,
                           std::int64_t samples, std::uint64_t seed, bool parallel) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (seq.against.empty()) throw std::invalid_argument("sequence carries no permutations");
    validate(policy, n);
    const std::int64_t C = (samples + static_cast<std::int64_t>(kChunkSize) - 1) / static_cast<std::int64_t>(kChunkSize);
    std::vector<std::int64_t> hits(C, 0);
    const int L = static_cast<int>(seq.against.size());
    auto kernel = [&](std::int64_t c) {
        auto rng = chunk_rng(seed, static_cast<std::uint64_t>(c));
        const std::int64_t len = std::min<std::int64_t>(kChunkSize, samples - c * static_cast<std::int64_t>(kChunkSize));
        std::uniform_int_distribution<int> pick_perm(0, L - 1);
        std::int64_t h = 0;
        for (std::int64_t i = 0; i < len; ++i) {
            const auto ha = hard_assignment_sample(seq, n, policy.k, eps, rng());
            const auto& perm = seq.against[pick_perm(rng)];
            const int top = seq.elements[std::max_element(seq.elements.begin(), seq.elements.end(),
                                                          [&](int a, int b) { return ha.exponents[a] < ha.exponents[b]; }) -
                                         seq.elements.begin()];
            const auto out = run_multi(perm, ha.order_values(), policy);
            h += std::find(out.picked_elements.begin(), out.picked_elements.end(), top) != out.picked_elements.end();
        }
        return h;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t c = 0; c < C; ++c) hits[c] = kernel(c);
    } else {
        for (std::int64_t c = 0; c < C; ++c) hits[c] = kernel(c);
    }
    std::int64_t total = 0;
    for (auto h : hits) total += h;
    CaptureReport rep;
    rep.samples = samples;
    rep.frequency = static_cast<double>(total) / static_cast<double>(samples);
    rep.bound = static_cast<double>(policy.k) / static_cast<double>(seq.elements.size());
    const double p = std::min(rep.bound, 1.0);
    rep.sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return rep;
}

}  // namespace

CaptureReport hard_capture_frequency(const SemitoneSequence& seq, int n, const MultiPolicy& policy, double eps,
                                     std::int64_t samples, std::uint64_t seed) {
    return capture_impl(seq, n, policy, eps, samples, seed, true);
}

CaptureReport hard_capture_frequency_serial(const SemitoneSequence& seq, int n, const MultiPolicy& policy, double eps,
                                            std::int64_t samples, std::uint64_t seed) {
    return capture_impl(seq, n, policy, eps, samples, seed, false);
}

KillerResult wait_and_pick_killer(const std::vector<Permutation>& perms, int m, int k, double eps) {
    if (perms.empty()) throw std::invalid_argument("killer needs at least one permutation");
    const int n = perms[0].size();
    for (const auto& p : perms)
        if (p.size() != n) throw std::invalid_argument("permutations differ in size");
    if (m < 1 || m >= n) throw std::invalid_argument("m must lie in [1, n-1]");
    if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
    const long long L = static_cast<long long>(perms.size());

    KillerResult res{ValueAssignment(std::vector<double>(n, 0.0), true), KillerBranch::isolated_element, {}, 0, false};
    if (L * (m + k) < n) {
        int chosen = -1;
        for (int e = 0; e < n && chosen < 0; ++e) {
            bool hidden = true;
            for (const auto& p : perms) hidden = hidden && p.position_of(e) >= m + k;
            if (hidden) chosen = e;
        }
        if (chosen < 0) throw std::logic_error("no element avoids every prefix; counting bound violated");
        std::vector<double> v(n, (1.0 - eps) / k);
        v[chosen] = 1.0;
        res.values = ValueAssignment(std::move(v), true);
        res.branch = KillerBranch::isolated_element;
        res.special = {chosen};
        return res;
    }

    if (m < k) throw std::invalid_argument("killer needs l (m + k) < n or m >= k");
    const int take = static_cast<int>(std::ceil(eps * k - 1e-12));
    std::vector<char> in_k(n, 0);
    std::vector<int> K;
    for (const auto& p : perms) {
        if (static_cast<int>(K.size()) >= k) break;
        ++res.permutations_used;
        int added = 0;
        for (int pos = 0; pos < m && added < take && static_cast<int>(K.size()) < k; ++pos) {
            const int e = p.at(pos);
            if (in_k[e]) continue;
            in_k[e] = 1;
            K.push_back(e);
            ++added;
        }
    }
    if (static_cast<int>(K.size()) < k) {
        res.exhausted = true;
        for (int e = 0; e < n && static_cast<int>(K.size()) < k; ++e)
            if (!in_k[e]) in_k[e] = 1, K.push_back(e);
    }
    std::vector<double> v(n, kNegligibleValue);
    for (int e : K) v[e] = 1.0;
    res.values = ValueAssignment(std::move(v), true);
    res.branch = KillerBranch::k_set;
    res.special = std::move(K);
    return res;
}

}  // namespace secretary
