#ifndef SIGNORM_ORDERSTATS_HPP
#define SIGNORM_ORDERSTATS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "signorm/curves.hpp"
#include "signorm/errors.hpp"
#include "signorm/rng.hpp"

namespace signorm {

/// Two independent sorted samples of n uniforms on [0,1], with
/// y_n = max_j |U_(j) - V_(j)|.
struct OrderStatSample {
    int n = 0;
    std::vector<double> U;
    std::vector<double> V;
    double y_n = 0.0;
};

struct EstimatorResult {
    double mean = 0.0;
    double stderr_ = 0.0;
    int replicates = 0;
    std::uint64_t seed = 0;
};

/// Kernel estimate plus the magnitude of the first omitted series term
/// (evaluated at the largest |a' - b'| seen across replicates).
struct KernelEstimate {
    EstimatorResult result;
    double first_omitted = 0.0;
};

enum class EstimatorForm { product, exponential };

OrderStatSample sample_order_stats(int n, RngStream& rng);

/// Coefficient of x^{2k} in 2 asin(x/2)^2, i.e. 1 / (binom(2k,k) k^2).
double series_coefficient(int k);

/// (prod_j cos theta_j, exp(-1/2 sum_j theta_j^2)) for angles in [0, pi].
std::pair<double, double> angle_sum_functional(const std::vector<double>& thetas);

/// Monte-Carlo estimate of (n! ||X^n||)^2 via the order-statistics identity.
EstimatorResult norm_estimator(const Curve& curve, int n, int replicates,
                               EstimatorForm form, std::uint64_t seed);

/// Both forms from the same draws (paired, for gap measurements). Returns
/// (product-form result, exponential-form result, paired gap estimate with
/// its own stderr).
struct PairedNormEstimate {
    EstimatorResult product;
    EstimatorResult exponential;
    EstimatorResult gap;  // mean of (product - exponential) per replicate
};
PairedNormEstimate norm_estimator_paired(const Curve& curve, int n, int replicates,
                                         std::uint64_t seed);

/// Truncated-series kernel estimator for (n!)^2 <S(a)^n, S(b)^n>.
KernelEstimate kernel_estimator(const Curve& a, const Curve& b, int n, int D, int M,
                                std::uint64_t seed);

/// Fixed pairwise reduction; mean independent of worker split.
double pairwise_mean(const std::vector<double>& values);

} // namespace signorm

#endif
