#ifndef SIGNORM_TENSOR_HPP
#define SIGNORM_TENSOR_HPP

#include <vector>

#include "signorm/curves.hpp"
#include "signorm/errors.hpp"

namespace signorm {

/// Element of the truncated free tensor algebra over R^d: dense coordinates
/// for levels 0..N, level k holding d^k entries.
class TruncatedTensorSeries {
public:
    TruncatedTensorSeries(int dim, int degree);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    std::vector<double>& level(int k) { return levels_[k]; }
    const std::vector<double>& level(int k) const { return levels_[k]; }

private:
    int dim_;
    int degree_;
    std::vector<std::vector<double>> levels_;
};

/// Axis-path norm parameters: n-th level of the signature of a concatenation
/// of m orthogonal segments with lengths l_1..l_m summing to 1.
struct MultinomialSpec {
    int m;
    std::vector<double> weights;
    int n;

    MultinomialSpec(std::vector<double> w, int degree);
};

/// exp(v) truncated at degree N: level k = v^{(x)k} / k!.
TruncatedTensorSeries segment_exponential(const Vec& v, int N);

/// Truncated tensor product: level n = sum_k a_k (x) b_{n-k}.
TruncatedTensorSeries chen_product(const TruncatedTensorSeries& a,
                                   const TruncatedTensorSeries& b);

/// Signature of a piecewise-linear curve (polyline or axis-path) as the
/// ordered Chen product of segment exponentials.
TruncatedTensorSeries signature(const Curve& path, int N);

double hs_inner(const TruncatedTensorSeries& a, const TruncatedTensorSeries& b, int n);
double hs_norm(const TruncatedTensorSeries& a, int n);

/// Exact ||n! X^n||^2 for an orthogonal axis path, enumerated over all
/// compositions of n into m parts (log-space multinomial weights).
double axis_norm_squared(const MultinomialSpec& spec);

/// Renyi entropy H_alpha of the multinomial law; H_2 = -log axis_norm_squared.
double renyi_entropy(const MultinomialSpec& spec, double alpha);

/// Laplace asymptotic for ||n! X^n||^2: 2 sqrt(pi n) prod_j (4 pi n l_j)^{-1/2}.
double laplace_norm_approx(const MultinomialSpec& spec);

/// Two-term asymptotic of H_2 for m = 2 with weight l: (1/2) log(4 pi s^2 n)
/// plus, when terms = 1, the 1/n correction (1 - 6 s^2)/(16 s^2 n), s^2 = l(1-l).
double h2_expansion(double l, int n, int terms);

} // namespace signorm

#endif
