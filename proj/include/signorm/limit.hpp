#ifndef SIGNORM_LIMIT_HPP
#define SIGNORM_LIMIT_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "signorm/curves.hpp"
#include "signorm/errors.hpp"
#include "signorm/orderstats.hpp"
#include "signorm/rng.hpp"

namespace signorm {

/// Atomic measure on (0, 1]: atoms t_1 < ... < t_n with nonnegative weights.
/// All normalization constants live in the weights; the solver is neutral.
struct DiscreteMeasure {
    std::vector<double> atoms;
    std::vector<double> weights;

    DiscreteMeasure() = default;
    DiscreteMeasure(std::vector<double> atoms_, std::vector<double> weights_);
};

/// Piecewise-linear solution of the distributional ODE psi'' = psi * mu with
/// psi(0) = 0, psi'(0) = 1; slope jumps weight * value at each atom.
struct SturmLiouvilleSolution {
    std::vector<double> intercepts;  // a_j, segment j between atoms
    std::vector<double> slopes;      // b_j
    std::vector<double> breakpoints; // atom positions bounding the segments
    double value_at_one = 1.0;

    double evaluate(double t) const;
};

/// Brownian bridge on the grid j/n, pinned to 0 at both ends.
struct BridgePath {
    int n = 0;
    std::vector<double> values;  // size n+1, values[j] = B_{j/n}
};

enum class LimitExponent { quarter, half };

/// Exact forward recursion through the atoms; no discretization error.
SturmLiouvilleSolution solve_psi_discrete(const DiscreteMeasure& mu);

/// RK4 for psi'' = rho(t) psi, psi(0) = 0, psi'(0) = 1, with step halving.
/// The caller supplies every constant factor inside rho.
SturmLiouvilleSolution solve_psi_continuous(const std::function<double(double)>& density,
                                            double tolerance = 1e-10);

/// psi_1^{-l/4} or psi_1^{-l/2}; both conventions circulate, the flag decides.
double limit_constant(double psi1, LimitExponent exponent, double l);

/// E[exp(-alpha int_0^1 (B_s)^2 ds)] = (sqrt(2a)/sinh sqrt(2a))^{1/2}.
double closed_form_bridge_exponential(double alpha);

BridgePath sample_bridge(int n, RngStream& rng);

/// r_{n,D} = E[exp(-(2D/n) sum_j Gamma_j B_{j/n}^2)].
/// Monte-Carlo route averages over bridge draws; the ODE route solves the
/// discrete Sturm-Liouville problem with weights (4D/n) Gamma_j and returns
/// psi(1)^{-1/2} (deterministic; stderr 0).
EstimatorResult r_nD_mc(const CurvatureProfile& profile, double D, int replicates,
                        std::uint64_t seed);
double r_nD_ode(const CurvatureProfile& profile, double D);

/// Raw sums of the asymptotic expansion:
///   term1    = (2/n^4) sum_{i=1}^{n-1} sum_{s=1}^{i} s Gamma_s
///   xi2_sums = sum_{i=1}^{n-1} xi_2^i,
///              xi_2^j = sum_{1<=s1<s2<=j} (sum_{s<=s1} s Gamma_s) Gamma_{s2}
///   term2    = xi2_sums / n^6 (leading constant left to the caller).
struct ExpansionTerms {
    double term1 = 0.0;
    double term2 = 0.0;
    double xi2_sums = 0.0;
};

ExpansionTerms expansion_terms(const CurvatureProfile& profile, int n);

/// xi_2^j = sum_{1<=s1<s2<=j} (sum_{s<=s1} s Gamma_s) Gamma_{s2}.
double xi2(const CurvatureProfile& profile, int j);

} // namespace signorm

#endif
