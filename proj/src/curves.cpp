#include "signorm/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace signorm {

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

namespace {

constexpr double kUnitSpeedTol = 1e-9;

void check_domain(double t, double l) {
    if (t < -kUnitSpeedTol || t > l + kUnitSpeedTol)
        throw OutOfDomain("time outside [0, length]");
}

// Locate the segment index for time t given breakpoints 0=s_0<...<s_m.
std::size_t segment_index(const std::vector<double>& breaks, double t) {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
    std::size_t i = static_cast<std::size_t>(it - breaks.begin());
    if (i > 0) --i;
    if (i >= breaks.size() - 1) i = breaks.size() - 2;
    return i;
}

} // namespace

Curve Curve::circle_arc(double curvature, double length) {
    if (!(curvature > 0.0)) throw InvalidSpec("circle-arc requires curvature > 0");
    if (!(length > 0.0)) throw InvalidSpec("circle-arc requires length > 0");
    Curve c;
    c.kind_ = CurveKind::circle_arc;
    c.dim_ = 2;
    c.length_ = length;
    c.data_ = CircleArc{curvature};
    return c;
}

Curve Curve::axis_path(std::vector<int> directions, std::vector<double> lengths, int dim) {
    if (directions.empty() || directions.size() != lengths.size())
        throw InvalidSpec("axis-path requires matching directions and lengths");
    double total = 0.0;
    for (double l : lengths) {
        if (!(l > 0.0)) throw InvalidSpec("axis-path segment lengths must be positive");
        total += l;
    }
    for (int d : directions)
        if (d < 0 || d >= dim) throw InvalidSpec("axis-path direction index outside dimension");
    Curve c;
    c.kind_ = CurveKind::axis_path;
    c.dim_ = dim;
    c.length_ = total;
    c.data_ = AxisPath{std::move(directions), std::move(lengths)};
    return c;
}

Curve Curve::piecewise_circular(const std::vector<double>& curvatures,
                                const std::vector<int>& orientations,
                                const std::vector<double>& lengths,
                                double initial_phase) {
    const std::size_t m = curvatures.size();
    if (m == 0 || orientations.size() != m || lengths.size() != m)
        throw InvalidSpec("piecewise-circular requires matching arc parameter lists");
    PiecewiseCircular pc;
    double x = 0.0, y = 0.0, phase = initial_phase, total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (!(curvatures[k] > 0.0)) throw InvalidSpec("arc curvature must be positive");
        if (orientations[k] != 1 && orientations[k] != -1)
            throw InvalidSpec("arc orientation must be +1 or -1");
        if (!(lengths[k] > 0.0)) throw InvalidSpec("arc length must be positive");
        pc.arcs.push_back(CircArc{curvatures[k], orientations[k], phase, lengths[k], x, y});
        // advance start point and tangent angle to the arc endpoint
        const double w = orientations[k] * curvatures[k];
        const double t = lengths[k];
        x += (std::sin(phase + w * t) - std::sin(phase)) / w;
        y += -(std::cos(phase + w * t) - std::cos(phase)) / w;
        phase += w * t;
        total += t;
    }
    Curve c;
    c.kind_ = CurveKind::piecewise_circular;
    c.dim_ = 2;
    c.length_ = total;
    c.data_ = std::move(pc);
    return c;
}

Curve Curve::polyline(std::vector<Vec> vertices, std::vector<double> timestamps,
                      bool renormalize) {
    if (vertices.size() < 2 || vertices.size() != timestamps.size())
        throw InvalidSpec("polyline requires >= 2 vertices with matching timestamps");
    const std::size_t d = vertices.front().size();
    for (const auto& v : vertices)
        if (v.size() != d) throw InvalidSpec("polyline vertices of mixed dimension");
    for (std::size_t i = 1; i < timestamps.size(); ++i)
        if (!(timestamps[i] > timestamps[i - 1]))
            throw InvalidSpec("polyline timestamps must be strictly increasing");

    if (renormalize) {
        timestamps[0] = 0.0;
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            Vec diff(d);
            for (std::size_t j = 0; j < d; ++j) diff[j] = vertices[i][j] - vertices[i - 1][j];
            const double len = norm(diff);
            if (!(len > 0.0)) throw InvalidSpec("polyline has coincident consecutive vertices");
            timestamps[i] = timestamps[i - 1] + len;
        }
    } else {
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            Vec diff(d);
            for (std::size_t j = 0; j < d; ++j) diff[j] = vertices[i][j] - vertices[i - 1][j];
            const double speed = norm(diff) / (timestamps[i] - timestamps[i - 1]);
            if (std::abs(speed - 1.0) > kUnitSpeedTol)
                throw InvalidSpec("polyline is not unit-speed; pass renormalize to rescale");
        }
    }
    const double t0 = timestamps.front();
    if (t0 != 0.0)
        for (auto& t : timestamps) t -= t0;

    Curve c;
    c.kind_ = CurveKind::polyline;
    c.dim_ = static_cast<int>(d);
    c.length_ = timestamps.back();
    c.data_ = Polyline{std::move(timestamps), std::move(vertices), true};
    return c;
}

Curve Curve::chord_polyline(std::vector<Vec> vertices, std::vector<double> timestamps) {
    if (vertices.size() < 2 || vertices.size() != timestamps.size())
        throw InvalidSpec("polyline requires >= 2 vertices with matching timestamps");
    for (std::size_t i = 1; i < timestamps.size(); ++i)
        if (!(timestamps[i] > timestamps[i - 1]))
            throw InvalidSpec("polyline timestamps must be strictly increasing");
    Curve c;
    c.kind_ = CurveKind::polyline;
    c.dim_ = static_cast<int>(vertices.front().size());
    c.length_ = timestamps.back() - timestamps.front();
    c.data_ = Polyline{std::move(timestamps), std::move(vertices), false};
    return c;
}

const Curve::Polyline& Curve::as_polyline() const {
    if (kind_ != CurveKind::polyline) throw Error("curve is not a polyline");
    return std::get<Polyline>(data_);
}

const Curve::AxisPath& Curve::as_axis_path() const {
    if (kind_ != CurveKind::axis_path) throw Error("curve is not an axis path");
    return std::get<AxisPath>(data_);
}

Vec Curve::evaluate(double t, int order) const {
    check_domain(t, length_);
    t = std::clamp(t, 0.0, length_);

    switch (kind_) {
    case CurveKind::circle_arc: {
        const double k = std::get<CircleArc>(data_).curvature;
        // gamma(t) = (sin(kt)/k, (1 - cos(kt))/k): unit speed, |gamma''| = k
        if (order == 0) return {std::sin(k * t) / k, (1.0 - std::cos(k * t)) / k};
        if (order == 1) return {std::cos(k * t), std::sin(k * t)};
        if (order == 2) return {-k * std::sin(k * t), k * std::cos(k * t)};
        throw InvalidSpec("order must be 0, 1 or 2");
    }
    case CurveKind::axis_path: {
        const auto& ap = std::get<AxisPath>(data_);
        if (order == 2)
            throw UnsupportedDerivative("axis-path has no second derivative");
        if (order != 0 && order != 1) throw InvalidSpec("order must be 0, 1 or 2");
        Vec p(dim_, 0.0);
        double s = 0.0;
        for (std::size_t i = 0; i < ap.lengths.size(); ++i) {
            const double seg = ap.lengths[i];
            if (t <= s + seg || i + 1 == ap.lengths.size()) {
                if (order == 1) {
                    Vec tangent(dim_, 0.0);
                    tangent[ap.directions[i]] = 1.0;
                    return tangent;
                }
                p[ap.directions[i]] += t - s;
                return p;
            }
            p[ap.directions[i]] += seg;
            s += seg;
        }
        return p;
    }
    case CurveKind::piecewise_circular: {
        const auto& pc = std::get<PiecewiseCircular>(data_);
        double s = 0.0;
        std::size_t i = 0;
        for (; i + 1 < pc.arcs.size(); ++i) {
            if (t <= s + pc.arcs[i].length) break;
            s += pc.arcs[i].length;
        }
        const auto& arc = pc.arcs[i];
        const double w = arc.orientation * arc.curvature;
        const double u = t - s;
        const double ang = arc.phase + w * u;
        if (order == 0)
            return {arc.x0 + (std::sin(ang) - std::sin(arc.phase)) / w,
                    arc.y0 - (std::cos(ang) - std::cos(arc.phase)) / w};
        if (order == 1) return {std::cos(ang), std::sin(ang)};
        if (order == 2) return {-w * std::sin(ang), w * std::cos(ang)};
        throw InvalidSpec("order must be 0, 1 or 2");
    }
    case CurveKind::polyline: {
        const auto& pl = std::get<Polyline>(data_);
        if (order == 2)
            throw UnsupportedDerivative("polyline has no second derivative");
        if (order != 0 && order != 1) throw InvalidSpec("order must be 0, 1 or 2");
        const std::size_t i = segment_index(pl.timestamps, t);
        const double dt = pl.timestamps[i + 1] - pl.timestamps[i];
        Vec out(dim_);
        for (int j = 0; j < dim_; ++j) {
            const double slope = (pl.vertices[i + 1][j] - pl.vertices[i][j]) / dt;
            out[j] = order == 1 ? slope
                                : pl.vertices[i][j] + slope * (t - pl.timestamps[i]);
        }
        return out;
    }
    }
    throw Error("unreachable");
}

double Curve::curvature_at(double t) const {
    if (piecewise_linear())
        throw UnsupportedDerivative("piecewise-linear curves carry no curvature");
    return norm(evaluate(t, 2));
}

Curve sample_polyline(const Curve& curve, int segments) {
    if (segments < 1) throw InvalidSpec("segments must be >= 1");
    if (curve.kind() == CurveKind::polyline) {
        const auto& pl = curve.as_polyline();
        if (static_cast<int>(pl.vertices.size()) - 1 == segments) return curve;
    }
    std::vector<Vec> vertices;
    std::vector<double> timestamps;
    vertices.reserve(segments + 1);
    timestamps.reserve(segments + 1);
    const double l = curve.length();
    for (int i = 0; i <= segments; ++i) {
        const double t = l * static_cast<double>(i) / segments;
        vertices.push_back(curve.evaluate(t, 0));
        timestamps.push_back(t);
    }
    return Curve::chord_polyline(std::move(vertices), std::move(timestamps));
}

CurvatureProfile curvature_profile(const Curve& curve, int n, std::optional<double> declared_L) {
    if (n < 1) throw InvalidSpec("grid size must be >= 1");
    if (curve.piecewise_linear())
        throw UnsupportedDerivative("curvature profile undefined for piecewise-linear curves");
    CurvatureProfile prof;
    prof.n = n;
    prof.gamma.resize(n);
    const double l = curve.length();
    double sup = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double k = curve.curvature_at(l * static_cast<double>(j) / n);
        prof.gamma[j - 1] = k * k;
        sup = std::max(sup, k);
    }
    // M is the sup over the curve, not just the profile grid
    const int fine = std::max(n, 1024);
    for (int j = 0; j <= fine; ++j)
        sup = std::max(sup, curve.curvature_at(l * static_cast<double>(j) / fine));
    prof.M = sup;
    prof.L = declared_L ? *declared_L : estimate_inverse_curvature_lipschitz(curve);
    return prof;
}

double estimate_inverse_curvature_lipschitz(const Curve& curve) {
    const int n = 10000;
    const double l = curve.length();
    const double h = l / n;
    double best = 0.0;
    for (int j = 1; j < n; ++j) {
        const double km = curve.curvature_at((j - 1) * h);
        const double kp = curve.curvature_at((j + 1) * h);
        if (km < 1e-9 || kp < 1e-9) throw NonIntegrable("curvature vanishes on the grid");
        best = std::max(best, std::abs(1.0 / kp - 1.0 / km) / (2.0 * h));
    }
    return best;
}

} // namespace signorm
