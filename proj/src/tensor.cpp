#include "signorm/tensor.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

namespace signorm {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Fixed-shape pairwise sum; reproducible regardless of how callers split work.
double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

} // namespace

TruncatedTensorSeries::TruncatedTensorSeries(int dim, int degree)
    : dim_(dim), degree_(degree), levels_(degree + 1) {
    if (dim < 1 || degree < 0) throw InvalidSpec("tensor series requires dim >= 1, degree >= 0");
    for (int k = 0; k <= degree; ++k) levels_[k].assign(ipow(dim, k), 0.0);
}

MultinomialSpec::MultinomialSpec(std::vector<double> w, int degree)
    : m(static_cast<int>(w.size())), weights(std::move(w)), n(degree) {
    if (m < 1 || n < 0) throw InvalidSpec("multinomial spec requires m >= 1, n >= 0");
    double total = 0.0;
    for (double l : weights) {
        if (!(l > 0.0)) throw InvalidSpec("multinomial weights must be positive");
        total += l;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw InvalidSpec("multinomial weights must sum to 1");
}

TruncatedTensorSeries segment_exponential(const Vec& v, int N) {
    const int d = static_cast<int>(v.size());
    TruncatedTensorSeries out(d, N);
    out.level(0)[0] = 1.0;
    for (int k = 1; k <= N; ++k) {
        const auto& prev = out.level(k - 1);
        auto& cur = out.level(k);
        std::size_t idx = 0;
        for (double p : prev)
            for (int j = 0; j < d; ++j) cur[idx++] = p * v[j] / k;
    }
    return out;
}

TruncatedTensorSeries chen_product(const TruncatedTensorSeries& a,
                                   const TruncatedTensorSeries& b) {
    if (a.dim() != b.dim() || a.degree() != b.degree())
        throw DimensionMismatch("chen_product operands must share dim and degree");
    const int d = a.dim();
    const int N = a.degree();
    TruncatedTensorSeries out(d, N);
    std::vector<double> terms(N + 1);
    for (int n = 0; n <= N; ++n) {
        auto& lvl = out.level(n);
        const std::size_t sz = lvl.size();
        for (std::size_t idx = 0; idx < sz; ++idx) {
            // index splits as (left word of length k, right word of length n-k)
            std::size_t right_sz = 1;
            for (int k = n; k >= 0; --k) {
                const std::size_t li = idx / right_sz;
                const std::size_t ri = idx % right_sz;
                terms[k] = a.level(k)[li] * b.level(n - k)[ri];
                right_sz *= d;
            }
            lvl[idx] = pairwise_sum(terms.data(), n + 1);
        }
    }
    return out;
}

TruncatedTensorSeries signature(const Curve& path, int N) {
    if (!path.piecewise_linear())
        throw InvalidSpec("signature requires a piecewise-linear curve");
    const int d = path.dim();

    std::vector<Vec> increments;
    if (path.kind() == CurveKind::polyline) {
        const auto& pl = path.as_polyline();
        for (std::size_t i = 1; i < pl.vertices.size(); ++i) {
            Vec inc(d);
            for (int j = 0; j < d; ++j) inc[j] = pl.vertices[i][j] - pl.vertices[i - 1][j];
            increments.push_back(std::move(inc));
        }
    } else {
        const auto& ap = path.as_axis_path();
        for (std::size_t i = 0; i < ap.lengths.size(); ++i) {
            Vec inc(d, 0.0);
            inc[ap.directions[i]] = ap.lengths[i];
            increments.push_back(std::move(inc));
        }
    }

    TruncatedTensorSeries sig = segment_exponential(Vec(d, 0.0), N);
    for (const auto& inc : increments)
        sig = chen_product(sig, segment_exponential(inc, N));
    return sig;
}

double hs_inner(const TruncatedTensorSeries& a, const TruncatedTensorSeries& b, int n) {
    if (a.dim() != b.dim()) throw DimensionMismatch("hs_inner operands must share dim");
    if (n > a.degree() || n > b.degree())
        throw DimensionMismatch("level exceeds truncation degree");
    return std::inner_product(a.level(n).begin(), a.level(n).end(), b.level(n).begin(), 0.0);
}

double hs_norm(const TruncatedTensorSeries& a, int n) {
    return std::sqrt(hs_inner(a, a, n));
}

namespace {

// log multinomial weight log(n! / prod k_i!) + sum k_i log l_i
double log_multinomial_weight(const std::vector<int>& k, const std::vector<double>& l,
                              int n) {
    double lg = std::lgamma(n + 1.0);
    for (std::size_t i = 0; i < k.size(); ++i)
        lg += -std::lgamma(k[i] + 1.0) + k[i] * std::log(l[i]);
    return lg;
}

// Iterate all compositions of n into m nonnegative parts.
template <typename F>
void for_each_composition(int n, int m, F&& f) {
    std::vector<int> k(m, 0);
    k[0] = n;
    while (true) {
        f(k);
        if (k[m - 1] == n) break;
        // colex-style successor
        int i = 0;
        while (k[i] == 0) ++i;
        const int v = k[i];
        k[i] = 0;
        k[0] = v - 1;
        ++k[i + 1];
    }
}

} // namespace

double axis_norm_squared(const MultinomialSpec& spec) {
    double sum = 0.0;
    for_each_composition(spec.n, spec.m, [&](const std::vector<int>& k) {
        const double lg = log_multinomial_weight(k, spec.weights, spec.n);
        sum += std::exp(2.0 * lg);
    });
    return sum;
}

double renyi_entropy(const MultinomialSpec& spec, double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0)
        throw DomainError("Renyi entropy requires alpha > 0, alpha != 1");
    // log-sum-exp over alpha * log p
    double max_lg = -std::numeric_limits<double>::infinity();
    std::vector<double> lgs;
    for_each_composition(spec.n, spec.m, [&](const std::vector<int>& k) {
        const double lg = alpha * log_multinomial_weight(k, spec.weights, spec.n);
        lgs.push_back(lg);
        max_lg = std::max(max_lg, lg);
    });
    double s = 0.0;
    for (double lg : lgs) s += std::exp(lg - max_lg);
    return (max_lg + std::log(s)) / (1.0 - alpha);
}

double laplace_norm_approx(const MultinomialSpec& spec) {
    if (spec.n < 1) throw InvalidSpec("Laplace approximation requires n >= 1");
    double prod = 1.0;
    for (double l : spec.weights) prod *= 1.0 / (4.0 * M_PI * spec.n * l);
    return 2.0 * std::sqrt(M_PI * spec.n) * std::sqrt(prod);
}

double h2_expansion(double l, int n, int terms) {
    if (!(l > 0.0 && l < 1.0)) throw DomainError("weight must lie in (0, 1)");
    const double s2 = l * (1.0 - l);
    double h = 0.5 * std::log(4.0 * M_PI * s2 * n);
    // Edgeworth correction: -kappa_4 / (16 n sigma^4) with
    // kappa_4 = sigma^2 (1 - 6 sigma^2); at l = 1/2 this is +1/(8n), which the
    // exact enumeration confirms
    if (terms >= 1) h -= (1.0 - 6.0 * s2) / (16.0 * s2) / n;
    return h;
}

} // namespace signorm
