#ifndef SIGNORM_TRANSPORT_HPP
#define SIGNORM_TRANSPORT_HPP

#include <vector>

#include "signorm/curves.hpp"
#include "signorm/errors.hpp"
#include "signorm/orderstats.hpp"

namespace signorm {

/// Sorted real sample with uniform weights 1/n.
struct EmpiricalMeasure {
    std::vector<double> sorted;

    explicit EmpiricalMeasure(std::vector<double> values);
    int size() const { return static_cast<int>(sorted.size()); }
};

/// Grid solution of F'(t) = |gamma''_{F(t)}|^{-1}, F(0) = 0, on [0, tau] with
/// tau = inf{t : F(t) = 1}; monotone piecewise-cubic interpolation both ways.
/// F is extended by 0 below 0 and by 1 above tau.
class DistributionF {
public:
    static DistributionF solve(const Curve& curve, double tolerance = 1e-10);

    double tau() const { return tau_; }
    double value(double t) const;      // F(t)
    double inverse(double u) const;    // F^{-1}(u), u in [0,1]
    double density(double t) const;    // f(t) = |gamma''_{F(t)}|^{-1} on [0,tau]
    double curvature_at_quantile(double u) const;  // |gamma''| at arc position u*l
    const std::vector<double>& grid_t() const { return t_; }
    const std::vector<double>& grid_F() const { return F_; }

private:
    DistributionF() = default;
    std::vector<double> t_, F_;
    std::vector<double> slope_fwd_, slope_inv_;  // pchip derivative data
    double tau_ = 0.0;
    std::vector<double> curvature_;  // |gamma''| at F(t_k)
};

/// Speed-difference bound factors ((1 -+ MLy)^p, (1 +- MLy)^p); the lower
/// factor is clamped to 0 (degenerate flag) when MLy >= 1.
struct BoundFactors {
    double lower = 1.0;
    double upper = 1.0;
    bool degenerate = false;
};

double wasserstein_p(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int p);

DistributionF solve_distribution(const Curve& curve, double tolerance = 1e-10);

std::pair<EmpiricalMeasure, EmpiricalMeasure>
inverse_transform(const DistributionF& F, const OrderStatSample& sample);

BoundFactors bound_factors(double M, double L, double y_n, int p);

/// J_p = int_0^tau [F(1-F)]^{p/2} / f^{p-1} dt, composite Simpson.
double j_p_functional(const DistributionF& F, int p, int quadrature_points = 4097);

/// K_p = int_0^tau |x|^{p-1} sqrt(F(1-F)) dx.
double k_p_functional(const DistributionF& F, int p, int quadrature_points = 4097);

/// (5p / sqrt(n+2))^p * J_p.
double expected_wasserstein_bound(const DistributionF& F, int p, int n);

} // namespace signorm

#endif
