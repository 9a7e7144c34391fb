#include "signorm/limit.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace signorm {

DiscreteMeasure::DiscreteMeasure(std::vector<double> atoms_, std::vector<double> weights_)
    : atoms(std::move(atoms_)), weights(std::move(weights_)) {
    if (atoms.size() != weights.size())
        throw InvalidSpec("discrete measure needs matching atoms and weights");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(atoms[i] > 0.0 && atoms[i] <= 1.0))
            throw InvalidSpec("atoms must lie in (0, 1]");
        if (i > 0 && !(atoms[i] > atoms[i - 1]))
            throw InvalidSpec("atoms must be strictly increasing");
        if (weights[i] < 0.0) throw InvalidSpec("weights must be nonnegative");
    }
}

double SturmLiouvilleSolution::evaluate(double t) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - breakpoints.begin());
    return intercepts[j] + slopes[j] * t;
}

SturmLiouvilleSolution solve_psi_discrete(const DiscreteMeasure& mu) {
    SturmLiouvilleSolution sol;
    double a = 0.0, b = 1.0;
    sol.intercepts.push_back(a);
    sol.slopes.push_back(b);
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
        const double t = mu.atoms[i];
        const double psi = a + b * t;
        if (psi <= 0.0) throw Error("psi lost positivity at an atom");
        b += mu.weights[i] * psi;   // slope jump = weight * value
        a = psi - b * t;
        sol.breakpoints.push_back(t);
        sol.intercepts.push_back(a);
        sol.slopes.push_back(b);
    }
    sol.value_at_one = a + b;
    return sol;
}

SturmLiouvilleSolution solve_psi_continuous(const std::function<double(double)>& density,
                                            double tolerance) {
    const auto integrate = [&](int steps) {
        double psi = 0.0, dpsi = 1.0;
        const double h = 1.0 / steps;
        for (int i = 0; i < steps; ++i) {
            const double t = i * h;
            // RK4 on (psi, psi')' = (psi', rho psi)
            const double k1p = dpsi, k1v = density(t) * psi;
            const double k2p = dpsi + 0.5 * h * k1v,
                         k2v = density(t + 0.5 * h) * (psi + 0.5 * h * k1p);
            const double k3p = dpsi + 0.5 * h * k2v,
                         k3v = density(t + 0.5 * h) * (psi + 0.5 * h * k2p);
            const double k4p = dpsi + h * k3v, k4v = density(t + h) * (psi + h * k3p);
            psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            dpsi += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        }
        return std::pair{psi, dpsi};
    };
    int steps = 64;
    double prev = integrate(steps).first;
    double cur = prev;
    for (int halving = 0; halving < 20; ++halving) {
        steps *= 2;
        cur = integrate(steps).first;
        if (std::abs(cur - prev) < tolerance) break;
        prev = cur;
    }
    SturmLiouvilleSolution sol;
    sol.intercepts = {0.0};
    sol.slopes = {1.0};
    sol.value_at_one = cur;
    return sol;
}

double limit_constant(double psi1, LimitExponent exponent, double l) {
    if (!(psi1 > 0.0)) throw DomainError("limit constant requires psi(1) > 0");
    const double e = exponent == LimitExponent::quarter ? l / 4.0 : l / 2.0;
    return std::pow(psi1, -e);
}

double closed_form_bridge_exponential(double alpha) {
    if (alpha < 0.0) throw DomainError("alpha must be >= 0");
    if (alpha == 0.0) return 1.0;
    const double x = std::sqrt(2.0 * alpha);
    // log(x / sinh x) computed stably for large x
    const double log_ratio = std::log(x) - (x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0));
    return std::exp(0.5 * log_ratio);
}

BridgePath sample_bridge(int n, RngStream& rng) {
    if (n < 1) throw InvalidSpec("bridge grid size must be >= 1");
    BridgePath path;
    path.n = n;
    path.values.assign(n + 1, 0.0);
    const double sd = 1.0 / std::sqrt(double(n));
    double w = 0.0;
    std::vector<double> walk(n + 1, 0.0);
    for (int j = 1; j <= n; ++j) {
        w += sd * rng.next_gaussian();
        walk[j] = w;
    }
    for (int j = 0; j <= n; ++j)
        path.values[j] = walk[j] - (double(j) / n) * walk[n];
    return path;
}

EstimatorResult r_nD_mc(const CurvatureProfile& profile, double D, int replicates,
                        std::uint64_t seed) {
    const int n = profile.n;
    std::vector<double> values(replicates);
    for (int r = 0; r < replicates; ++r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        const BridgePath bridge = sample_bridge(n, rng);
        double s = 0.0;
        for (int j = 1; j <= n; ++j)
            s += profile.gamma[j - 1] * bridge.values[j] * bridge.values[j];
        values[r] = std::exp(-2.0 * D / n * s);
    }
    EstimatorResult out;
    out.replicates = replicates;
    out.seed = seed;
    out.mean = pairwise_mean(values);
    if (replicates >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.stderr_ = std::sqrt(ss / (replicates - 1)) / std::sqrt(double(replicates));
    }
    return out;
}

double r_nD_ode(const CurvatureProfile& profile, double D) {
    const int n = profile.n;
    std::vector<double> atoms(n), weights(n);
    for (int j = 1; j <= n; ++j) {
        atoms[j - 1] = double(j) / n;
        weights[j - 1] = 4.0 * D / n * profile.gamma[j - 1];
    }
    const auto sol = solve_psi_discrete(DiscreteMeasure(std::move(atoms), std::move(weights)));
    return 1.0 / std::sqrt(sol.value_at_one);
}

double xi2(const CurvatureProfile& profile, int j) {
    if (j < 1 || j > profile.n) throw OutOfDomain("xi_2^j requires 1 <= j <= n");
    // sum over 1 <= s1 < s2 <= j of (sum_{s<=s1} s Gamma_s) * Gamma_{s2}
    double P = 0.0, PPacc = 0.0, acc = 0.0;
    for (int s2 = 1; s2 <= j; ++s2) {
        if (s2 >= 2) acc += profile.gamma[s2 - 1] * PPacc;
        P += double(s2) * profile.gamma[s2 - 1];
        PPacc += P;
    }
    return acc;
}

ExpansionTerms expansion_terms(const CurvatureProfile& profile, int n) {
    if (profile.n != n) throw SizeMismatch("profile grid must match n");
    ExpansionTerms out;
    double P = 0.0, PPacc = 0.0, sum_P = 0.0, xi = 0.0, xi_total = 0.0;
    for (int j = 1; j <= n - 1; ++j) {
        if (j >= 2) xi += profile.gamma[j - 1] * PPacc;  // pairs with s2 = j
        xi_total += xi;
        P += double(j) * profile.gamma[j - 1];
        PPacc += P;
        sum_P += P;
    }
    out.term1 = 2.0 / std::pow(double(n), 4) * sum_P;
    out.xi2_sums = xi_total;
    out.term2 = xi_total / std::pow(double(n), 6);
    return out;
}

} // namespace signorm
