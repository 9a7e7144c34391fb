#include "signorm/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>

namespace signorm {

namespace {

constexpr double kMinCurvature = 1e-9;

// Fritsch-Carlson monotone cubic slopes.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n < 2) return m;
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = x[k + 1] - x[k];
        delta[k] = (y[k + 1] - y[k]) / h[k];
    }
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (delta[k - 1] * delta[k] <= 0.0) {
            m[k] = 0.0;
        } else {
            const double w1 = 2.0 * h[k] + h[k - 1];
            const double w2 = h[k] + 2.0 * h[k - 1];
            m[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    return m;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& m, double xq) {
    const std::size_t n = x.size();
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t k = static_cast<std::size_t>(it - x.begin()) - 1;
    const double h = x[k + 1] - x[k];
    const double s = (xq - x[k]) / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * y[k] + h10 * h * m[k] + h01 * y[k + 1] + h11 * h * m[k + 1];
}

// Simpson rule on [a, b] with an odd number of points.
template <typename F>
double simpson(F&& f, double a, double b, int points) {
    if (points < 3) points = 3;
    if (points % 2 == 0) ++points;
    const int n = points - 1;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double jp_integral(const DistributionF& F, double p, int points) {
    return simpson(
        [&](double t) {
            const double Ft = F.value(t);
            const double base = std::max(Ft * (1.0 - Ft), 0.0);
            return std::pow(base, p / 2.0) * std::pow(F.density(t), -(p - 1.0));
        },
        0.0, F.tau(), points);
}

} // namespace

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> values) : sorted(std::move(values)) {
    if (sorted.empty()) throw InvalidSpec("empirical measure requires at least one sample");
    for (double v : sorted)
        if (!std::isfinite(v)) throw InvalidSpec("empirical measure requires finite entries");
    std::sort(sorted.begin(), sorted.end());
}

double wasserstein_p(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int p) {
    if (a.size() != b.size()) throw SizeMismatch("samples must have equal size");
    if (p < 1) throw InvalidSpec("p must be >= 1");
    const int n = a.size();
    double s = 0.0;
    for (int j = 0; j < n; ++j)
        s += std::pow(std::abs(a.sorted[j] - b.sorted[j]), double(p));
    return std::pow(s / n, 1.0 / p);
}

// DistributionF ------------------------------------------------------------

namespace {

struct FIntegration {
    std::vector<double> t, F, curvature;
    double tau = 0.0;
};

double rhs(const Curve& curve, double F) {
    const double k = curve.curvature_at(std::clamp(F, 0.0, 1.0) * curve.length());
    if (k < kMinCurvature) throw NonIntegrable("curvature below 1e-9 along trajectory");
    return 1.0 / k;
}

double rk4_step(const Curve& curve, double F, double h) {
    const double k1 = rhs(curve, F);
    const double k2 = rhs(curve, F + 0.5 * h * k1);
    const double k3 = rhs(curve, F + 0.5 * h * k2);
    const double k4 = rhs(curve, F + h * k3);
    return F + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

FIntegration integrate_F(const Curve& curve, double h) {
    FIntegration out;
    double t = 0.0, F = 0.0;
    out.t.push_back(0.0);
    out.F.push_back(0.0);
    while (true) {
        const double Fn = rk4_step(curve, F, h);
        if (Fn >= 1.0) {
            // bisect the step size so the step lands exactly on F = 1
            double lo = 0.0, hi = h;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (rk4_step(curve, F, mid) >= 1.0)
                    hi = mid;
                else
                    lo = mid;
                if (hi - lo < 1e-16 * std::max(1.0, h)) break;
            }
            out.tau = t + 0.5 * (lo + hi);
            out.t.push_back(out.tau);
            out.F.push_back(1.0);
            break;
        }
        t += h;
        F = Fn;
        out.t.push_back(t);
        out.F.push_back(F);
        if (out.t.size() > 50'000'000) throw NonIntegrable("F integration did not terminate");
    }
    return out;
}

} // namespace

DistributionF DistributionF::solve(const Curve& curve, double tolerance) {
    if (curve.piecewise_linear())
        throw UnsupportedDerivative("distribution solve requires curvature");
    // F moves at speed 1/kappa, so tau is on the order of the mean curvature
    double h = curve.curvature_at(0.0) / 64.0;
    FIntegration cur = integrate_F(curve, h);
    for (int halving = 0; halving < 24; ++halving) {
        // curvature discontinuities limit RK4 to first order at the jump, so
        // cap the refinement by a grid budget rather than looping forever
        if (cur.t.size() > 2'000'000) break;
        h *= 0.5;
        FIntegration next = integrate_F(curve, h);
        const bool converged = std::abs(next.tau - cur.tau) < tolerance;
        cur = std::move(next);
        if (converged) break;
    }
    DistributionF out;
    out.t_ = std::move(cur.t);
    out.F_ = std::move(cur.F);
    out.tau_ = cur.tau;
    out.curvature_.resize(out.t_.size());
    for (std::size_t k = 0; k < out.t_.size(); ++k) {
        out.curvature_[k] =
            curve.curvature_at(std::clamp(out.F_[k], 0.0, 1.0) * curve.length());
    }
    out.slope_fwd_ = pchip_slopes(out.t_, out.F_);
    out.slope_inv_ = pchip_slopes(out.F_, out.t_);
    return out;
}

double DistributionF::value(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= tau_) return 1.0;
    return std::clamp(pchip_eval(t_, F_, slope_fwd_, t), 0.0, 1.0);
}

double DistributionF::inverse(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    return pchip_eval(F_, t_, slope_inv_, u);
}

double DistributionF::density(double t) const {
    if (t < 0.0 || t > tau_) return 0.0;
    // density is 1/|gamma''| at quantile F(t); curvature tabulated on the grid
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - t_.begin());
    if (k > 0) --k;
    if (k >= t_.size() - 1) k = t_.size() - 2;
    const double w = (t - t_[k]) / (t_[k + 1] - t_[k]);
    const double kappa = (1.0 - w) * curvature_[k] + w * curvature_[k + 1];
    return 1.0 / kappa;
}

double DistributionF::curvature_at_quantile(double u) const {
    return 1.0 / density(inverse(std::clamp(u, 0.0, 1.0)));
}

DistributionF solve_distribution(const Curve& curve, double tolerance) {
    return DistributionF::solve(curve, tolerance);
}

std::pair<EmpiricalMeasure, EmpiricalMeasure>
inverse_transform(const DistributionF& F, const OrderStatSample& sample) {
    std::vector<double> X(sample.n), Y(sample.n);
    for (int i = 0; i < sample.n; ++i) {
        X[i] = F.inverse(sample.U[i]);
        Y[i] = F.inverse(sample.V[i]);
    }
    return {EmpiricalMeasure(std::move(X)), EmpiricalMeasure(std::move(Y))};
}

BoundFactors bound_factors(double M, double L, double y_n, int p) {
    if (M < 0.0 || L < 0.0 || y_n < 0.0) throw DomainError("M, L, y_n must be >= 0");
    const double mly = M * L * y_n;
    BoundFactors out;
    out.upper = std::pow(1.0 + mly, double(p));
    if (mly >= 1.0) {
        out.lower = 0.0;
        out.degenerate = true;
    } else {
        out.lower = std::pow(1.0 - mly, double(p));
    }
    return out;
}

double j_p_functional(const DistributionF& F, int p, int quadrature_points) {
    if (p < 2 || p % 2 != 0) throw InvalidSpec("J_p requires even p >= 2");
    return jp_integral(F, double(p), quadrature_points);
}

double k_p_functional(const DistributionF& F, int p, int quadrature_points) {
    if (p < 1) throw InvalidSpec("K_p requires p >= 1");
    return simpson(
        [&](double x) {
            const double Fx = F.value(x);
            return std::pow(std::abs(x), double(p - 1)) *
                   std::sqrt(std::max(Fx * (1.0 - Fx), 0.0));
        },
        0.0, F.tau(), quadrature_points);
}

double expected_wasserstein_bound(const DistributionF& F, int p, int n) {
    if (p < 1 || n < 1) throw InvalidSpec("bound requires p >= 1, n >= 1");
    const double jp = jp_integral(F, double(p), 4097);
    return std::pow(5.0 * p / std::sqrt(double(n + 2)), double(p)) * jp;
}

} // namespace signorm
