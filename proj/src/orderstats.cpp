#include "signorm/orderstats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace signorm {

namespace {

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

EstimatorResult reduce(const std::vector<double>& values, std::uint64_t seed) {
    EstimatorResult r;
    r.replicates = static_cast<int>(values.size());
    r.seed = seed;
    r.mean = pairwise_mean(values);
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - r.mean) * (v - r.mean);
        r.stderr_ = std::sqrt(ss / (values.size() - 1)) / std::sqrt(double(values.size()));
    }
    return r;
}

// Angles Theta_j = arccos <gamma'(U_j l), gamma'(V_j l)> for one draw.
std::vector<double> draw_angles(const Curve& curve, int n, RngStream& rng) {
    const OrderStatSample s = sample_order_stats(n, rng);
    const double l = curve.length();
    std::vector<double> thetas(n);
    for (int j = 0; j < n; ++j) {
        const Vec gu = curve.evaluate(s.U[j] * l, 1);
        const Vec gv = curve.evaluate(s.V[j] * l, 1);
        const double q = std::clamp(dot(gu, gv), -1.0, 1.0);
        thetas[j] = std::acos(q);
    }
    return thetas;
}

} // namespace

double pairwise_mean(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    return pairwise_sum(values.data(), values.size()) / double(values.size());
}

OrderStatSample sample_order_stats(int n, RngStream& rng) {
    if (n < 1) throw InvalidSpec("sample size must be >= 1");
    OrderStatSample s;
    s.n = n;
    s.U.resize(n);
    s.V.resize(n);
    for (int i = 0; i < n; ++i) s.U[i] = rng.next_uniform();
    for (int i = 0; i < n; ++i) s.V[i] = rng.next_uniform();
    std::sort(s.U.begin(), s.U.end());
    std::sort(s.V.begin(), s.V.end());
    for (int i = 0; i < n; ++i) s.y_n = std::max(s.y_n, std::abs(s.U[i] - s.V[i]));
    return s;
}

double series_coefficient(int k) {
    if (k < 1) throw InvalidSpec("series coefficient requires k >= 1");
    if (k <= 25) {
        double binom = 1.0;
        for (int i = 1; i <= k; ++i) binom = binom * (k + i) / i;
        return 1.0 / (binom * k * k);
    }
    const double log_binom =
        std::lgamma(2.0 * k + 1.0) - 2.0 * std::lgamma(k + 1.0);
    return std::exp(-log_binom - 2.0 * std::log(double(k)));
}

std::pair<double, double> angle_sum_functional(const std::vector<double>& thetas) {
    double prod = 1.0;
    double sumsq = 0.0;
    for (double t : thetas) {
        if (t < 0.0 || t > M_PI + 1e-12)
            throw DomainError("angle outside [0, pi]");
        prod *= std::cos(t);
        sumsq += t * t;
    }
    return {prod, std::exp(-0.5 * sumsq)};
}

EstimatorResult norm_estimator(const Curve& curve, int n, int replicates,
                               EstimatorForm form, std::uint64_t seed) {
    if (n < 1) throw InvalidSpec("degree must be >= 1");
    if (replicates < 1) throw InvalidSpec("replicates must be >= 1");
    std::vector<double> values(replicates);
    for (int r = 0; r < replicates; ++r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        const auto [prod, expo] = angle_sum_functional(draw_angles(curve, n, rng));
        values[r] = form == EstimatorForm::product ? prod : expo;
    }
    return reduce(values, seed);
}

PairedNormEstimate norm_estimator_paired(const Curve& curve, int n, int replicates,
                                         std::uint64_t seed) {
    if (n < 1) throw InvalidSpec("degree must be >= 1");
    if (replicates < 1) throw InvalidSpec("replicates must be >= 1");
    std::vector<double> prods(replicates), expos(replicates), gaps(replicates);
    for (int r = 0; r < replicates; ++r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        const auto [prod, expo] = angle_sum_functional(draw_angles(curve, n, rng));
        prods[r] = prod;
        expos[r] = expo;
        gaps[r] = prod - expo;
    }
    return {reduce(prods, seed), reduce(expos, seed), reduce(gaps, seed)};
}

KernelEstimate kernel_estimator(const Curve& a, const Curve& b, int n, int D, int M,
                                std::uint64_t seed) {
    if (a.dim() != b.dim()) throw DimensionMismatch("kernel curves must share dimension");
    if (n < 1 || D < 1 || M < 1) throw InvalidSpec("kernel estimator requires n, D, M >= 1");
    std::vector<double> coeffs(M);
    for (int s = 1; s <= M; ++s) coeffs[s - 1] = series_coefficient(s);
    const double la = a.length();
    const double lb = b.length();
    const int d = a.dim();

    std::vector<double> values(D);
    double max_x2 = 0.0;
    for (int r = 0; r < D; ++r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        const OrderStatSample s = sample_order_stats(n, rng);
        double exponent = 0.0;
        for (int j = 0; j < n; ++j) {
            const Vec ga = a.evaluate(s.U[j] * la, 1);
            const Vec gb = b.evaluate(s.V[j] * lb, 1);
            double x2 = 0.0;
            for (int i = 0; i < d; ++i) {
                const double diff = ga[i] - gb[i];
                x2 += diff * diff;
            }
            max_x2 = std::max(max_x2, x2);
            double pw = x2;
            for (int k = 1; k <= M; ++k) {
                exponent -= coeffs[k - 1] * pw;
                pw *= x2;
            }
        }
        values[r] = std::exp(exponent);
    }
    KernelEstimate out;
    out.result = reduce(values, seed);
    // size of the first omitted term at the worst replicate, times n draws
    out.first_omitted = n * series_coefficient(M + 1) * std::pow(max_x2, M + 1);
    return out;
}

} // namespace signorm
