// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "signorm/curves.hpp"
#include "signorm/limit.hpp"
#include "signorm/orderstats.hpp"
#include "signorm/rng.hpp"
#include "signorm/tensor.hpp"
#include "signorm/transport.hpp"

using namespace signorm;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& extra = "") {
    std::printf("criterion %2d: %-38s %s%s%s\n", idx, name.c_str(),
                ok ? "PASS" : "FAIL", extra.empty() ? "" : "  ", extra.c_str());
    if (!ok) ++failures;
}

double brute_force_cost(const std::vector<double>& a, std::vector<double> b, int p) {
    std::sort(b.begin(), b.end());
    double best = 1e300;
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += std::pow(std::abs(a[i] - b[i]), double(p));
        best = std::min(best, s);
    } while (std::next_permutation(b.begin(), b.end()));
    return best / double(a.size());
}

double tensor_norm_sq(const TruncatedTensorSeries& sig, int n) {
    // (n!)^2 ||X^n||^2 in log space to dodge factorial overflow
    return std::exp(2.0 * (std::lgamma(n + 1.0) + std::log(hs_norm(sig, n))));
}

void criterion1() {
    bool ok = true;
    RngStream rng(1001, 0);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const int n = 2 + int(rng.next_u64() % 5);
        std::vector<double> av(n), bv(n);
        for (int i = 0; i < n; ++i) {
            av[i] = rng.next_uniform();
            bv[i] = rng.next_uniform();
        }
        EmpiricalMeasure a(av), b(bv);
        for (int p : {1, 2, 3}) {
            const double w = wasserstein_p(a, b, p);
            const double cost = std::pow(w, double(p));
            if (std::abs(cost - brute_force_cost(av, bv, p)) > 1e-12) ok = false;
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                s += std::pow(std::abs(a.sorted[j] - b.sorted[j]), double(p));
            if (std::abs(n * cost - s) > 1e-12 * std::max(1.0, s)) ok = false;
        }
    }
    report(1, "transport exactness", ok);
}

void criterion2() {
    bool ok = true;
    for (double x : {0.5, 1.0, 1.9}) {
        // 50 terms suffice for x <= 1; x = 1.9 decays like 0.9^k and needs a
        // few hundred terms to reach 1e-6
        const int terms = x > 1.0 ? 500 : 50;
        double s = 0.0;
        for (int k = 1; k <= terms; ++k)
            s += series_coefficient(k) * std::pow(x, 2.0 * k);
        if (std::abs(s - 2.0 * std::pow(std::asin(x / 2.0), 2.0)) >= 1e-6) ok = false;
    }
    // endpoint x = 2: terms decay like k^{-3/2}, so 50 terms leave a ~0.5 gap;
    // reaching 1e-3 takes ~10^7 terms via the term recurrence
    double sum2 = 0.0, term = 2.0;
    for (int k = 1; k <= 20'000'000; ++k) {
        sum2 += term;
        term *= 4.0 * k * k / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    }
    if (std::abs(sum2 - M_PI * M_PI / 2.0) >= 1e-3) ok = false;
    report(2, "arcsine series identity", ok);
}

void criterion3() {
    bool ok = true;
    const Curve axis2 = Curve::axis_path({0, 1}, {0.5, 0.5}, 2);
    const auto sig2 = signature(axis2, 12);
    for (int n = 1; n <= 12; ++n) {
        const double got = tensor_norm_sq(sig2, n);
        const double want = std::exp(std::lgamma(2.0 * n + 1.0) - 2.0 * n * std::log(2.0) -
                                     2.0 * std::lgamma(n + 1.0));
        if (std::abs(got - want) / want > 1e-10) ok = false;
    }
    // tensor route equals exp(-H_2) of the multinomial for m <= 3
    struct Case {
        std::vector<int> dirs;
        std::vector<double> lens;
    };
    const std::vector<Case> cases = {
        {{0}, {1.0}}, {{0, 1}, {0.4, 0.6}}, {{0, 1, 2}, {0.2, 0.3, 0.5}}};
    for (const auto& c : cases) {
        const Curve ap = Curve::axis_path(c.dirs, c.lens, int(c.dirs.size()));
        const auto sig = signature(ap, 8);
        for (int n = 1; n <= 8; ++n) {
            const MultinomialSpec spec(c.lens, n);
            const double want = std::exp(-renyi_entropy(spec, 2.0));
            if (std::abs(tensor_norm_sq(sig, n) - want) / want > 1e-8) ok = false;
        }
    }
    report(3, "axis-path closed forms", ok);
}

void criterion4() {
    const MultinomialSpec two({0.5, 0.5}, 200);
    const double rel2 = std::abs(laplace_norm_approx(two) / axis_norm_squared(two) - 1.0);
    const MultinomialSpec three({1.0 / 3, 1.0 / 3, 1.0 / 3}, 200);
    const double rel3 =
        std::abs(laplace_norm_approx(three) / axis_norm_squared(three) - 1.0);
    char extra[64];
    std::snprintf(extra, sizeof(extra), "rel m=2 %.3g, m=3 %.3g", rel2, rel3);
    report(4, "Laplace approximation", rel2 < 0.05 && rel3 < 0.10, extra);
}

void criterion5() {
    bool ok = true;
    double prev_res = 1e300, prev_nres = 1e300;
    for (int n : {100, 400, 1600}) {
        const MultinomialSpec spec({0.5, 0.5}, n);
        const double res = std::abs(renyi_entropy(spec, 2.0) - h2_expansion(0.5, n, 1));
        if (!(res < prev_res && n * res < prev_nres)) ok = false;
        prev_res = res;
        prev_nres = n * res;
    }
    report(5, "H2 expansion residual o(1/n)", ok);
}

void criterion6() {
    bool ok = true;
    const Curve circle = Curve::circle_arc(1.0, 1.0);
    const auto sig = signature(sample_polyline(circle, 512), 6);
    for (int n : {2, 4, 6}) {
        const double exact = tensor_norm_sq(sig, n);
        const auto paired = norm_estimator_paired(circle, n, 100000, 600 + n);
        if (std::abs(paired.product.mean - exact) > 3.0 * paired.product.stderr_)
            ok = false;
        // the exponential form carries an O(1/n) bias (exp(-t^2/2) >= cos t),
        // measured exactly by the paired gap; allow for it on top of 3 sigma
        const double bias = std::abs(paired.gap.mean) + 3.0 * paired.gap.stderr_;
        if (std::abs(paired.exponential.mean - exact) >
            3.0 * paired.exponential.stderr_ + bias)
            ok = false;
    }
    const auto g2 = norm_estimator_paired(circle, 2, 20000, 661);
    const auto g32 = norm_estimator_paired(circle, 32, 20000, 661);
    if (!(std::abs(g32.gap.mean) < std::abs(g2.gap.mean))) ok = false;
    report(6, "MC vs tensor on the circle", ok);
}

void criterion7() {
    bool ok = true;
    RngStream rng(700, 0);
    const auto make_poly = [&](int segs) {
        // random directions, segment lengths normalized so the total is 1
        std::vector<double> lens(segs);
        double total = 0.0;
        for (auto& l : lens) total += (l = 0.5 + rng.next_uniform());
        std::vector<Vec> pts = {{0.0, 0.0}};
        std::vector<double> ts = {0.0};
        for (int i = 0; i < segs; ++i) {
            const double ang = 2.0 * M_PI * rng.next_uniform();
            const double len = lens[i] / total;
            pts.push_back({pts.back()[0] + len * std::cos(ang),
                           pts.back()[1] + len * std::sin(ang)});
            ts.push_back(ts.back() + len);
        }
        return Curve::polyline(std::move(pts), std::move(ts));
    };
    const Curve a = make_poly(4);
    const Curve b = make_poly(5);
    for (int n : {2, 3, 4}) {
        const double fact = std::tgamma(n + 1.0);
        const double exact = fact * fact * hs_inner(signature(a, n), signature(b, n), n);
        const KernelEstimate k = kernel_estimator(a, b, n, 100000, 8, 770 + n);
        if (std::abs(k.result.mean - exact) >
            3.0 * k.result.stderr_ + k.first_omitted)
            ok = false;
    }
    report(7, "kernel estimator vs tensor", ok);
}

void criterion8() {
    bool ok = true;
    const int n = 10000;
    const auto densities = {
        std::function<double(double)>([](double) { return 4.0; }),
        std::function<double(double)>([](double t) { return 1.0 + 3.0 * t; })};
    for (const auto& rho : densities) {
        std::vector<double> atoms(n), weights(n);
        for (int j = 1; j <= n; ++j) {
            atoms[j - 1] = double(j) / n;
            weights[j - 1] = rho(double(j) / n) / n;
        }
        const double disc =
            solve_psi_discrete(DiscreteMeasure(std::move(atoms), std::move(weights)))
                .value_at_one;
        const double cont = solve_psi_continuous(rho).value_at_one;
        if (std::abs(disc - cont) / cont >= 1e-3) ok = false;
    }
    for (double w : {0.5, 2.0}) {
        const double psi1 = solve_psi_discrete(DiscreteMeasure({0.5}, {w})).value_at_one;
        if (std::abs(psi1 - (1.0 + w / 4.0)) > 1e-15) ok = false;
    }
    report(8, "Sturm-Liouville routes agree", ok);
}

void criterion9() {
    bool ok = true;
    const int grid = 1000, reps = 100000;
    for (double alpha : {0.5, 4.0, 4.0 * M_PI * M_PI}) {
        CurvatureProfile prof;
        prof.n = grid;
        prof.gamma.assign(grid, 1.0);
        const double D = alpha / 2.0;  // exponent (2D/n) sum B^2 = (alpha/n) sum B^2
        const double closed = closed_form_bridge_exponential(alpha);
        const double ode = r_nD_ode(prof, D);
        const EstimatorResult mc = r_nD_mc(prof, D, reps, 900 + int(alpha));
        // the ODE value is the exact expectation of the MC functional on this
        // grid, so MC vs ODE is a pure 3-sigma test; ODE vs the continuum
        // closed form carries only discretization error
        if (std::abs(mc.mean - ode) > 3.0 * mc.stderr_) ok = false;
        if (std::abs(ode - closed) / closed >= 1e-3) ok = false;
        if (std::abs(mc.mean - closed) > 3.0 * mc.stderr_ + 1e-3 * closed) ok = false;
    }
    report(9, "bridge functional triangulation", ok);
}

void criterion10() {
    bool ok = true;
    // unit-length planar circle: curvature 2 pi, Gamma = 4 pi^2
    const double kappa = 2.0 * M_PI;
    const Curve circle = Curve::circle_arc(kappa, 1.0);
    const auto sig = signature(sample_polyline(circle, 512), 14);
    std::vector<double> b(15, 0.0);  // b[n] = n! ||X^n||
    for (int n = 8; n <= 14; ++n)
        b[n] = std::exp(std::lgamma(n + 1.0) + std::log(hs_norm(sig, n)));
    // monotone trend over degrees 8..14
    bool increasing = true, decreasing = true;
    for (int n = 9; n <= 14; ++n) {
        if (b[n] < b[n - 1]) increasing = false;
        if (b[n] > b[n - 1]) decreasing = false;
    }
    if (!increasing && !decreasing) ok = false;
    // Richardson extrapolation of the O(1/n) tail
    const double extrap = 14.0 * b[14] - 13.0 * b[13];
    const double extrap_prev = 13.0 * b[13] - 12.0 * b[12];
    const double extrap_err = std::abs(extrap - extrap_prev);

    CurvatureProfile prof;
    prof.n = 1000;
    prof.gamma.assign(1000, kappa * kappa);
    const double ode_c = std::sqrt(r_nD_ode(prof, 0.5));
    const EstimatorResult mc = r_nD_mc(prof, 0.5, 100000, 1010);
    const double mc_c = std::sqrt(mc.mean);
    const double mc_se = mc.stderr_ / (2.0 * mc_c);

    // mutual agreement of the three non-closed-form routes
    if (std::abs(extrap - ode_c) > 3.0 * (extrap_err + 1e-3)) ok = false;
    if (std::abs(mc_c - ode_c) > 3.0 * mc_se) ok = false;
    if (std::abs(mc_c - extrap) > 3.0 * (mc_se + extrap_err + 1e-3)) ok = false;

    const double cand_a = 0.22267499213559014;  // (2 sqrt2 pi / sinh 2 sqrt2 pi)^(1/4)
    const double cand_b = 0.6727687461965564;   // (2 sqrt pi / sinh 2 sqrt pi)^(1/4)
    const bool select_a = std::abs(extrap - cand_a) < std::abs(extrap - cand_b);
    const double selected = select_a ? cand_a : cand_b;
    if (std::abs(extrap - selected) > 1e-2) ok = false;
    char extra[128];
    std::snprintf(extra, sizeof(extra),
                  "extrap %.5f, ode %.5f, mc %.5f +- %.5f, selects %.4f (%s)", extrap,
                  ode_c, mc_c, mc_se, selected, select_a ? "quarter/2sqrt2pi" : "2sqrtpi");
    report(10, "circle limit arbitration", ok, extra);
}

void criterion11() {
    bool ok = true;
    const Curve c = Curve::circle_arc(1.0, 1.0);
    const DistributionF F = solve_distribution(c);
    for (int n : {50, 200}) {
        const int reps = 10000;
        double total = 0.0;
        for (int r = 0; r < reps; ++r) {
            RngStream rng(1100 + n, r);
            const OrderStatSample s = sample_order_stats(n, rng);
            const auto [X, Y] = inverse_transform(F, s);
            // W_2^2 against the true (uniform-on-[0,1]) measure, piecewise exact
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                const double lo = double(i) / n, hi = double(i + 1) / n;
                const double x = X.sorted[i];
                acc += (std::pow(hi - x, 3.0) - std::pow(lo - x, 3.0)) / 3.0;
            }
            total += acc;
        }
        if (total / reps > expected_wasserstein_bound(F, 2, n)) ok = false;
    }
    report(11, "expected-Wasserstein bound", ok);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", failures);
    return 1;
}
