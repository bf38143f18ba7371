// Command-line front end. Exit codes: 0 success, 1 validation error, 2 work budget or guard rejection.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "secretary/adversary.hpp"
#include "secretary/analysis.hpp"
#include "secretary/composition.hpp"
#include "secretary/derand.hpp"
#include "secretary/io.hpp"
#include "secretary/parallel.hpp"

using namespace secretary;

namespace {

// Writes to --out when given, stdout otherwise. Summary lines go to stdout, or stderr when stdout carries data.
struct Output {
    std::string path;
    std::ofstream file;
    std::ostream& data() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open " + path + " for writing");
        }
        return file;
    }
    std::ostream& info() { return path.empty() ? std::cerr : std::cout; }
};

OrderDistribution load_dist(const std::string& perms, const std::string& weights) {
    auto support = read_permutations_file(perms);
    if (weights.empty()) return OrderDistribution::uniform(std::move(support));
    return OrderDistribution::weighted(std::move(support), read_weights_file(weights));
}

std::string one_based(const std::vector<int>& v, char sep = ' ') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i] + 1);
    }
    return s;
}

struct PolicyFlags {
    std::string kind = "single";
    int m0 = 0, m = 0, tau = 1, k = 1;
    bool at_least = false, top_up = false;

    void add(CLI::App* app, bool with_kind = true) {
        if (with_kind) app->add_option("--policy", kind, "single or multi")->check(CLI::IsMember({"single", "multi"}));
        app->add_option("--m0", m0, "1-secretary threshold");
        app->add_option("--m", m, "k-secretary window length");
        app->add_option("--tau", tau, "statistic index within the window");
        app->add_option("--k", k, "number of picks");
        app->add_flag("--at-least", at_least, "pick values >= statistic instead of >");
        app->add_flag("--top-up", top_up, "fill a short selection from the trailing positions");
    }
    SinglePolicy single() const {
        if (m0 < 1) throw std::invalid_argument("--m0 is required for the single policy");
        return SinglePolicy{m0};
    }
    MultiPolicy multi() const {
        if (m < 1) throw std::invalid_argument("--m is required for the multi policy");
        MultiPolicy p;
        p.m = m;
        p.tau = tau;
        p.k = k;
        p.comparison = at_least ? Comparison::at_least : Comparison::strict;
        p.top_up = top_up;
        return p;
    }
};

void print_eval(std::ostream& os, const EvalReport& r, const char* label) {
    os << label << '=' << format_real(r.mean) << " samples=" << r.samples;
    if (r.mode == EvalMode::monte_carlo) os << " half_width_95=" << format_real(r.half_width_95);
    os << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-entropy secretary algorithms: constructions, derandomization, evaluation, adversaries"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    Output out;
    auto add_out = [&](CLI::App* s) { s->add_option("-o,--out", out.path, "output file (default stdout)"); };

    // construct-rs
    auto* rs = app.add_subcommand("construct-rs", "Reed-Solomon reduction family [n] -> [q]");
    int rs_n = 0, rs_q = 0, rs_d = 0;
    rs->add_option("--n", rs_n)->required();
    rs->add_option("--q", rs_q, "prime field size (0 = suggest)");
    rs->add_option("--d", rs_d, "polynomial degree (0 = minimal)");
    add_out(rs);

    // construct-product
    auto* prod = app.add_subcommand("construct-product", "product of two Reed-Solomon families [n] -> [ell2]");
    int pr_n = 0, pr_l1 = 0, pr_l2 = 0;
    prod->add_option("--n", pr_n)->required();
    prod->add_option("--ell1", pr_l1)->required();
    prod->add_option("--ell2", pr_l2)->required();
    add_out(prod);

    // compose
    auto* comp = app.add_subcommand("compose", "compose a family with a small permutation set");
    std::string cp_family, cp_perms;
    bool cp_all = false;
    comp->add_option("--family", cp_family)->required();
    comp->add_option("--perms", cp_perms, "small permutation file over [ell]");
    comp->add_flag("--all", cp_all, "use all ell! small permutations");
    add_out(comp);

    // derandomize
    auto* der = app.add_subcommand("derandomize", "greedy low-entropy permutation set");
    der->require_subcommand(1);
    int dr_n = 0, dr_k = 0, dr_m0 = 0, dr_m = 0, dr_tau = 1;
    double dr_eps = 0.4;
    std::string dr_ell = "auto", dr_trace;
    bool dr_serial = false;
    auto* der_s = der->add_subcommand("single", "1-secretary coverage");
    auto* der_m = der->add_subcommand("multi", "k-secretary coverage");
    for (auto* s : {der_s, der_m}) {
        s->add_option("--n", dr_n)->required();
        s->add_option("--k", dr_k)->required();
        s->add_option("--eps,--delta", dr_eps, "estimator slack eps' (single) or delta (multi)");
        s->add_option("--ell", dr_ell, "number of permutations or 'auto'");
        s->add_option("--trace", dr_trace, "write one 's r tau phi' line per decision");
        s->add_flag("--serial", dr_serial, "evaluate candidates serially");
        add_out(s);
    }
    der_s->add_option("--m0", dr_m0)->required();
    der_m->add_option("--m", dr_m)->required();
    der_m->add_option("--tau", dr_tau);

    // coverage
    auto* cov = app.add_subcommand("coverage", "minimum per-tuple success fraction of a permutation set");
    std::string cv_perms, cv_weights;
    double cv_target = -1.0;
    PolicyFlags cv_pol;
    cov->add_option("--perms", cv_perms)->required();
    cov->add_option("--weights", cv_weights);
    cov->add_option("--target", cv_target, "exit 1 when min_fraction falls below");
    cv_pol.add(cov);

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "success probability or competitive ratio");
    ev->require_subcommand(1);
    auto* ev_ex = ev->add_subcommand("exact", "over the support of a permutation file");
    auto* ev_mc = ev->add_subcommand("mc", "Monte Carlo under uniform random order");
    std::string ev_perms, ev_weights, ev_values;
    bool ev_ties = false;
    int ev_n = 0;
    std::int64_t ev_samples = 100000;
    std::uint64_t ev_seed = 0;
    PolicyFlags ev_pol;
    ev_ex->add_option("--perms", ev_perms)->required();
    ev_ex->add_option("--weights", ev_weights);
    ev_mc->add_option("--n", ev_n, "size when no value file is given");
    ev_mc->add_option("--samples", ev_samples)->check(CLI::PositiveNumber);
    ev_mc->add_option("--seed", ev_seed)->required();
    for (auto* s : {ev_ex, ev_mc}) {
        s->add_option("--values", ev_values, "value file (single default: worst case / distinct ranks)");
        s->add_flag("--ties", ev_ties, "accept tied values");
        ev_pol.add(s);
    }

    // entropy
    auto* ent = app.add_subcommand("entropy", "Shannon entropy in bits of a permutation distribution");
    std::string en_perms, en_weights;
    ent->add_option("--perms", en_perms)->required();
    ent->add_option("--weights", en_weights);

    // semitone
    auto* semi = app.add_subcommand("semitone", "semitone sequence against a permutation set");
    std::string sm_perms;
    int sm_s = 1;
    semi->add_option("--perms", sm_perms)->required();
    semi->add_option("--s", sm_s, "target length")->required();
    add_out(semi);

    // hard-assign
    auto* hard = app.add_subcommand("hard-assign", "random hard value assignment on a semitone sequence");
    std::string ha_perms;
    int ha_s = 1, ha_k = 1, ha_m = 0, ha_tau = 1;
    double ha_eps = 0.5;
    std::uint64_t ha_seed = 0;
    std::int64_t ha_capture = 0;
    hard->add_option("--perms", ha_perms)->required();
    hard->add_option("--s", ha_s, "semitone length")->required();
    hard->add_option("--k", ha_k);
    hard->add_option("--eps", ha_eps);
    hard->add_option("--seed", ha_seed)->required();
    hard->add_option("--capture-samples", ha_capture, "also estimate how often a wait-and-pick run takes the top");
    hard->add_option("--m", ha_m, "window for the capture estimate");
    hard->add_option("--tau", ha_tau);
    add_out(hard);

    // killer
    auto* kill = app.add_subcommand("killer", "value assignment defeating every wait-and-pick run on a set");
    std::string kl_perms;
    int kl_m = 1, kl_k = 1;
    double kl_eps = 0.5;
    kill->add_option("--perms", kl_perms)->required();
    kill->add_option("--m", kl_m)->required();
    kill->add_option("--k", kl_k)->required();
    kill->add_option("--eps", kl_eps);
    add_out(kill);

    // pipeline
    auto* pipe = app.add_subcommand("pipeline", "reduction family composed with a small permutation set");
    PipelineConfig pc;
    std::string pc_variant = "1-sec-allperms";
    bool pc_check = false;
    pipe->add_option("--n", pc.n)->required();
    pipe->add_option("--k", pc.k);
    pipe->add_option("--variant", pc_variant)
        ->check(CLI::IsMember({"k-sec-allperms", "k-sec-derand", "1-sec-allperms", "1-sec-derand"}));
    pipe->add_option("--q", pc.q);
    pipe->add_option("--d", pc.d);
    pipe->add_option("--ell1", pc.ell1);
    pipe->add_option("--ell2", pc.ell2);
    pipe->add_option("--m-small", pc.m_small);
    pipe->add_option("--tau", pc.tau);
    pipe->add_option("--eps", pc.eps);
    pipe->add_option("--ell-small", pc.ell_small);
    pipe->add_flag("--check", pc_check, "1-secretary, n <= 9: also report the exact worst case");
    add_out(pipe);

    // concentration
    auto* conc = app.add_subcommand("concentration", "empirical tails under uniform random order");
    std::string cc_mode = "chernoff";
    int cc_n = 0, cc_a = 0, cc_m = 0, cc_k = 1, cc_tau = 1;
    double cc_delta = 0.5;
    std::int64_t cc_samples = 100000;
    std::uint64_t cc_seed = 0;
    conc->add_option("--mode", cc_mode)->check(CLI::IsMember({"chernoff", "band"}));
    conc->add_option("--n", cc_n)->required();
    conc->add_option("--a", cc_a, "chernoff: marked elements");
    conc->add_option("--m", cc_m)->required();
    conc->add_option("--delta", cc_delta);
    conc->add_option("--k", cc_k, "band: k");
    conc->add_option("--tau", cc_tau, "band: statistic index");
    conc->add_option("--samples", cc_samples)->check(CLI::PositiveNumber);
    conc->add_option("--seed", cc_seed)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        set_threads(threads);

        if (rs->parsed()) {
            int q = rs_q, d = rs_d;
            if (q == 0) {
                const auto sp = suggest_params(rs_n, ParamMode::single_log);
                q = sp.q;
                d = d ? d : sp.d;
            } else if (d == 0) {
                d = 1;
                long long cap = q;
                while (cap * q < rs_n) cap *= q, ++d;
            }
            const auto fam = build_single_code(rs_n, q, d);
            write_family(out.data(), fam);
            out.info() << "n=" << fam.n << " l=" << fam.ell << " count=" << fam.size()
                       << " d=" << fam.claimed_collision_bound << '\n';
        } else if (prod->parsed()) {
            const auto fam = build_product_code(pr_n, pr_l1, pr_l2);
            write_family(out.data(), fam);
            out.info() << "n=" << fam.n << " l=" << fam.ell << " count=" << fam.size()
                       << " collision_bound=" << fam.claimed_collision_bound << '\n';
        } else if (comp->parsed()) {
            const auto fam = read_family_file(cp_family);
            if (cp_all == !cp_perms.empty()) throw std::invalid_argument("give exactly one of --perms and --all");
            const auto small = cp_all ? OrderDistribution::all_permutations(fam.ell)
                                      : OrderDistribution::uniform(read_permutations_file(cp_perms));
            const auto dist = compose(fam, small);
            write_permutations(out.data(), dist.support());
            out.info() << "count=" << dist.support_size() << " entropy=" << format_real(entropy(dist)) << '\n';
        } else if (der->parsed()) {
            const int ell = dr_ell == "auto" ? 0 : std::stoi(dr_ell);
            if (dr_ell != "auto" && ell < 1) throw std::invalid_argument("--ell must be positive or 'auto'");
            std::ofstream trace;
            GreedyOptions opt;
            opt.parallel = !dr_serial;
            if (!dr_trace.empty()) {
                trace.open(dr_trace);
                if (!trace) throw std::invalid_argument("cannot open " + dr_trace);
                opt.trace = &trace;
            }
            const auto g = der_s->parsed() ? greedy_find_single(dr_n, dr_k, dr_m0, dr_eps, ell, opt)
                                           : greedy_find_multi(dr_n, dr_k, dr_m, dr_tau, dr_eps, ell, opt);
            write_permutations(out.data(), g.dist.support());
            out.info() << "ell=" << g.ell << " mu_low=" << format_real(g.mu_low)
                       << " target=" << format_real((1.0 - g.eps) * g.mu_low)
                       << " phi_random=" << format_real(g.phi_random) << " phi_start=" << format_real(g.phi_start)
                       << " phi_final=" << format_real(g.phi_final) << " monotone=" << (g.monotone ? "yes" : "no")
                       << " evaluations=" << g.evaluations << '\n';
        } else if (cov->parsed()) {
            const auto dist = load_dist(cv_perms, cv_weights);
            const auto rep = cv_pol.kind == "single" ? coverage_check_single(dist, cv_pol.k, cv_pol.single().m0)
                                                     : coverage_check_multi(dist, cv_pol.multi());
            std::cout << "min_fraction=" << format_real(rep.min_fraction) << " tuples=" << rep.tuples
                      << " worst_tuple=" << one_based(rep.worst_tuple.indices, ',');
            if (rep.worst_tuple.kind == TupleKind::multi) std::cout << " j0_slot=" << rep.worst_tuple.distinguished + 1;
            std::cout << '\n';
            if (cv_target >= 0.0 && rep.min_fraction < cv_target) {
                std::cerr << "min_fraction below target " << format_real(cv_target) << '\n';
                return 1;
            }
        } else if (ev->parsed()) {
            std::optional<ValueAssignment> values;
            if (!ev_values.empty()) values.emplace(read_values_file(ev_values), ev_ties);
            if (ev_ex->parsed()) {
                const auto dist = load_dist(ev_perms, ev_weights);
                if (ev_pol.kind == "single") {
                    if (values) {
                        print_eval(std::cout, exact_evaluate(dist, *values, ev_pol.single()), "success");
                    } else {
                        std::cout << "worst_case_success=" << format_real(worst_case_success(dist, ev_pol.single()))
                                  << '\n';
                    }
                } else {
                    if (!values) throw std::invalid_argument("--values is required for the multi policy");
                    print_eval(std::cout, exact_evaluate(dist, *values, ev_pol.multi()), "ratio");
                }
            } else {
                if (!values) {
                    if (ev_n < 2) throw std::invalid_argument("give --values or --n");
                    std::vector<double> v(ev_n);
                    for (int e = 0; e < ev_n; ++e) v[e] = ev_n - e;
                    values.emplace(std::move(v));
                }
                if (ev_pol.kind == "single") {
                    print_eval(std::cout, mc_estimate(ev_pol.single(), *values, ev_samples, ev_seed), "success");
                } else {
                    print_eval(std::cout, mc_estimate(ev_pol.multi(), *values, ev_samples, ev_seed), "ratio");
                }
            }
        } else if (ent->parsed()) {
            std::cout << "entropy=" << format_real(entropy(load_dist(en_perms, en_weights))) << '\n';
        } else if (semi->parsed()) {
            const auto perms = read_permutations_file(sm_perms);
            try {
                const auto seq = find_semitone(perms, sm_s);
                out.data() << "s=" << seq.elements.size() << '\n' << one_based(seq.elements) << '\n';
                out.info() << "length=" << seq.elements.size() << '\n';
            } catch (const SemitoneNotFound& e) {
                std::cerr << e.what() << "\nachieved: " << one_based(e.best()) << '\n';
                return 1;
            }
        } else if (hard->parsed()) {
            const auto perms = read_permutations_file(ha_perms);
            const int n = perms.at(0).size();
            const auto seq = find_semitone(perms, ha_s);
            const auto h = hard_assignment_sample(seq, n, ha_k, ha_eps, ha_seed);
            write_values(out.data(), h.order_values(),
                         {"hard assignment: entries are exponents e, value = base^e",
                          "base=" + format_real(h.base) + " k=" + std::to_string(ha_k) + " eps=" + format_real(ha_eps) +
                              " s=" + std::to_string(h.s) + " seed=" + std::to_string(ha_seed),
                          "sequence: " + one_based(seq.elements)});
            if (ha_capture > 0) {
                MultiPolicy p;
                p.m = ha_m;
                p.tau = ha_tau;
                p.k = ha_k;
                const auto rep = hard_capture_frequency(seq, n, p, ha_eps, ha_capture, ha_seed);
                out.info() << "capture_frequency=" << format_real(rep.frequency) << " bound=" << format_real(rep.bound)
                           << " sigma=" << format_real(rep.sigma) << " samples=" << rep.samples << '\n';
            }
        } else if (kill->parsed()) {
            const auto perms = read_permutations_file(kl_perms);
            const auto res = wait_and_pick_killer(perms, kl_m, kl_k, kl_eps);
            const bool iso = res.branch == KillerBranch::isolated_element;
            write_values(out.data(), res.values,
                         {std::string("killer branch=") + (iso ? "isolated-element" : "k-set") +
                              " m=" + std::to_string(kl_m) + " k=" + std::to_string(kl_k) + " eps=" + format_real(kl_eps)});
            out.info() << "branch=" << (iso ? "isolated-element" : "k-set") << " special=" << one_based(res.special, ',')
                       << " top_k_sum=" << format_real(res.values.top_sum(kl_k));
            if (iso) {
                MultiPolicy p;
                p.m = kl_m;
                p.k = kl_k;
                p.comparison = Comparison::at_least;
                double worst = 0.0;
                for (const auto& pi : perms) worst = std::max(worst, run_multi(pi, res.values, p).total);
                out.info() << " max_total=" << format_real(worst);
            } else {
                out.info() << " permutations_used=" << res.permutations_used
                           << " exhausted=" << (res.exhausted ? "yes" : "no");
            }
            out.info() << '\n';
        } else if (pipe->parsed()) {
            pc.variant = parse_variant(pc_variant);
            const auto r = build_pipeline(pc);
            write_permutations(out.data(), r.dist.support());
            auto& os = out.info();
            for (const auto& w : r.warnings) os << "warning: " << w << '\n';
            os << "variant=" << variant_name(pc.variant) << " family_size=" << r.family.size()
               << " ell=" << r.family.ell << " collision_bound=" << r.family.claimed_collision_bound
               << " small_size=" << r.small.support_size() << " support=" << r.dist.support_size()
               << " entropy=" << format_real(entropy(r.dist)) << " small_bound=" << format_real(r.small_bound)
               << " predicted=" << format_real(r.predicted_ratio) << " vacuous=" << (r.vacuous ? "yes" : "no");
            if (r.single_policy) os << " m0=" << r.single_policy->m0;
            if (r.multi_policy) os << " m=" << r.multi_policy->m << " tau=" << r.multi_policy->tau;
            os << '\n';
            if (pc_check) {
                if (!r.single_policy) throw std::invalid_argument("--check applies to 1-secretary variants");
                os << "worst_case_success=" << format_real(worst_case_success(r.dist, *r.single_policy)) << '\n';
            }
        } else if (conc->parsed()) {
            if (cc_mode == "chernoff") {
                const auto r = concentration_check(cc_n, cc_a, cc_m, cc_delta, cc_samples, cc_seed);
                std::cout << "empirical_tail=" << format_real(r.empirical_tail) << " bound=" << format_real(r.bound)
                          << " mu=" << format_real(r.mu) << " sigma=" << format_real(r.sigma)
                          << " samples=" << r.samples << " within=" << (r.empirical_tail <= r.bound + 3 * r.sigma ? "yes" : "no")
                          << '\n';
            } else {
                const auto r = statistic_band_check(cc_n, cc_k, cc_m, cc_tau, cc_samples, cc_seed);
                std::cout << "band=[" << r.band_lo << ',' << r.band_hi << "] outside_frequency="
                          << format_real(r.outside_frequency) << " limit=" << format_real(r.limit)
                          << " samples=" << r.samples << '\n';
            }
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "guard: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
