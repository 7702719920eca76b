#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "conceptkit/cooccurrence.hpp"
#include "conceptkit/normal.hpp"
#include "conceptkit/rng.hpp"
#include "conceptkit/text.hpp"

namespace conceptkit {

// Monte Carlo verdict for one of the two analytic guarantees. `empirical`
// holds the failure frequency (convergence check) or the mean realized regret
// (argmax-regret check); the check passes when it stays within
// analytic + allowance, where allowance is a 3-standard-error margin.
struct TheoremReport {
    std::string check;
    std::size_t k = 0;
    double epsilon = 0.0;
    double delta = 0.0;    // convergence check only
    std::size_t n = 0;     // samples per trial (convergence check only)
    std::size_t n_star = 0;
    std::size_t trials = 0;
    double empirical = 0.0;
    double analytic = 0.0;
    double allowance = 0.0;
    bool pass = false;

    std::string summary() const {
        std::string s = pass ? "PASS" : "FAIL";
        s += " " + check + ": empirical=" + format_double(empirical) +
             " vs analytic=" + format_double(analytic) + " (+" + format_double(allowance) +
             " allowance), trials=" + std::to_string(trials);
        if (check == "cooccurrence-convergence")
            s += ", n=" + std::to_string(n) + ", n*=" + std::to_string(n_star);
        return s;
    }
};

// Sample threshold for the co-occurrence convergence guarantee:
// n* = ceil( 3/(eps^2 theta) * ln( 1 / (1 - (1-delta)^(1/k^2)) ) ).
// The published inequality drops the sign flip when the logarithm moves to
// the other side; this positive form follows from the concentration argument
// itself.
inline std::size_t convergence_sample_threshold(double epsilon, double delta, double theta,
                                                std::size_t k) {
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    const double inner = 1.0 - std::pow(1.0 - delta, 1.0 / kk);
    const double n = 3.0 / (epsilon * epsilon * theta) * std::log(1.0 / inner);
    return static_cast<std::size_t>(std::ceil(n));
}

// Monte Carlo check that the label-basis estimator M-hat lands within epsilon
// of M (max-entry distance) with probability at least 1 - delta at n = n*.
// Each trial draws an n-sample dataset from the profile distribution; only
// the per-profile counts matter for M-hat, so the trial draws those counts
// directly. A trial where some concept never activates counts as a failure
// (the estimator is undefined there).
inline TheoremReport verify_cooccurrence_convergence(const ProfileDistribution& p, double epsilon,
                                                     double delta, std::size_t trials,
                                                     std::uint64_t seed, std::size_t n_override = 0) {
    p.validate();
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("verify_cooccurrence_convergence: epsilon must be in (0,1)");
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("verify_cooccurrence_convergence: delta must be in (0,1)");
    if (trials < 1) throw std::invalid_argument("verify_cooccurrence_convergence: trials must be >= 1");

    const CooccurrenceMatrix exact = exact_cooccurrence(p);
    const double theta = exact.theta();
    if (theta <= 0.0)
        throw std::invalid_argument("verify_cooccurrence_convergence: theta = 0 (some conditional "
                                    "co-occurrence probability is zero)");

    const std::size_t k = p.num_concepts();
    const std::size_t n_star = convergence_sample_threshold(epsilon, delta, theta, k);
    const std::size_t n = n_override > 0 ? n_override : n_star;

    const std::size_t num_profiles = p.profiles.size();
    std::vector<std::vector<std::size_t>> active(num_profiles);
    for (std::size_t pi = 0; pi < num_profiles; ++pi)
        for (std::size_t j = 0; j < k; ++j)
            if (p.profiles[pi].pattern[j]) active[pi].push_back(j);

    auto eng = make_engine(derive_seed(seed, 0x7431));
    std::vector<std::size_t> counts(num_profiles);
    std::vector<double> marg(k);
    Matrix joint(k, k);

    std::size_t failures = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        // multinomial draw over profiles via sequential binomials
        std::size_t remaining = n;
        double prob_left = 1.0;
        for (std::size_t pi = 0; pi < num_profiles; ++pi) {
            if (pi + 1 == num_profiles) {
                counts[pi] = remaining;
                break;
            }
            const double q = prob_left > 0.0 ? std::min(1.0, p.profiles[pi].prob / prob_left) : 0.0;
            std::binomial_distribution<std::size_t> bin(remaining, q);
            counts[pi] = remaining > 0 ? bin(eng) : 0;
            remaining -= counts[pi];
            prob_left -= p.profiles[pi].prob;
        }

        std::fill(marg.begin(), marg.end(), 0.0);
        std::fill(joint.data.begin(), joint.data.end(), 0.0);
        for (std::size_t pi = 0; pi < num_profiles; ++pi) {
            if (!counts[pi]) continue;
            const double c = static_cast<double>(counts[pi]);
            for (std::size_t a : active[pi]) {
                marg[a] += c;
                for (std::size_t b : active[pi]) joint(a, b) += c;
            }
        }

        bool fail = false;
        for (std::size_t i = 0; i < k && !fail; ++i) {
            if (marg[i] == 0.0) {
                fail = true;
                break;
            }
            for (std::size_t j = 0; j < k; ++j) {
                const double dev = std::abs(exact.m(i, j) - joint(i, j) / marg[i]);
                if (dev >= epsilon) {
                    fail = true;
                    break;
                }
            }
        }
        failures += fail;
    }

    TheoremReport r;
    r.check = "cooccurrence-convergence";
    r.k = k;
    r.epsilon = epsilon;
    r.delta = delta;
    r.n = n;
    r.n_star = n_star;
    r.trials = trials;
    r.empirical = static_cast<double>(failures) / static_cast<double>(trials);
    r.analytic = delta;
    r.allowance = 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
    r.pass = r.empirical <= r.analytic + r.allowance;
    return r;
}

// Monte Carlo check of the argmax-regret bound under Gaussian corruption of
// the co-occurrence entries. For each queried concept i the reference column
// beta_i = argmax over intervened j of M[i][j]; a trial perturbs the
// competing entries with N(0, eps^2) noise and pays M[i][beta] - M[i][beta']
// when the argmax moves. The concentration argument compares each noisy
// competitor against the clean reference value, so the trial noise enters the
// competitors only; corrupting the reference entry as well breaks the stated
// bound by a sqrt(2) noise factor (two-candidate rows reach
// Phi(-gap/(eps*sqrt(2))) > Phi(-gap/eps)).
inline TheoremReport verify_argmax_regret(const CooccurrenceMatrix& m,
                                          const std::set<std::size_t>& intervened, double epsilon,
                                          std::size_t trials, std::uint64_t seed) {
    const std::size_t k = m.size();
    if (epsilon <= 0.0) throw std::invalid_argument("verify_argmax_regret: epsilon must be > 0");
    if (trials < 1) throw std::invalid_argument("verify_argmax_regret: trials must be >= 1");
    if (intervened.empty()) throw std::invalid_argument("verify_argmax_regret: intervened set is empty");
    for (std::size_t j : intervened)
        if (j >= k) throw std::invalid_argument("verify_argmax_regret: intervened index out of range");

    std::vector<std::size_t> sources(intervened.begin(), intervened.end());
    std::vector<std::size_t> queried;
    for (std::size_t i = 0; i < k; ++i)
        if (!intervened.count(i)) queried.push_back(i);
    if (queried.empty())  // degenerate all-intervened mode: every row is queried
        for (std::size_t i = 0; i < k; ++i) queried.push_back(i);

    std::vector<std::size_t> beta(queried.size());
    for (std::size_t qi = 0; qi < queried.size(); ++qi) {
        const std::size_t i = queried[qi];
        std::size_t best = sources[0];
        for (std::size_t j : sources)
            if (m.m(i, j) > m.m(i, best)) best = j;  // ties keep the lower index
        beta[qi] = best;
    }

    double bound = 0.0;
    for (std::size_t qi = 0; qi < queried.size(); ++qi) {
        const std::size_t i = queried[qi];
        const double ref = m.m(i, beta[qi]);
        for (std::size_t j : sources) {
            if (j == beta[qi]) continue;
            bound += std_normal_cdf((m.m(i, j) - ref) / epsilon) * (ref - m.m(i, j));
        }
    }

    auto eng = make_engine(derive_seed(seed, 0x7432));
    std::normal_distribution<double> gauss(0.0, 1.0);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        double regret = 0.0;
        for (std::size_t qi = 0; qi < queried.size(); ++qi) {
            const std::size_t i = queried[qi];
            const double ref = m.m(i, beta[qi]);
            double best_val = ref;
            std::size_t best = beta[qi];
            for (std::size_t j : sources) {
                if (j == beta[qi]) continue;
                const double noisy = m.m(i, j) + epsilon * gauss(eng);
                if (noisy > best_val) {
                    best_val = noisy;
                    best = j;
                }
            }
            regret += ref - m.m(i, best);
        }
        sum += regret;
        sumsq += regret * regret;
    }

    TheoremReport r;
    r.check = "argmax-regret";
    r.k = k;
    r.epsilon = epsilon;
    r.trials = trials;
    r.empirical = sum / static_cast<double>(trials);
    r.analytic = bound;
    const double var = std::max(0.0, sumsq / static_cast<double>(trials) - r.empirical * r.empirical);
    r.allowance = 3.0 * std::sqrt(var / static_cast<double>(trials));
    r.pass = r.empirical <= r.analytic + r.allowance;
    return r;
}

}  // namespace conceptkit
