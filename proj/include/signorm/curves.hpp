#ifndef SIGNORM_CURVES_HPP
#define SIGNORM_CURVES_HPP

#include <optional>
#include <variant>
#include <vector>

#include "signorm/errors.hpp"

namespace signorm {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);

enum class CurveKind { circle_arc, axis_path, piecewise_circular, polyline };

/// Unit-speed parametrized curve. Immutable after construction; curvature is
/// defined only for the analytic kinds (circle-arc, piecewise-circular).
/// Piecewise-linear kinds (axis-path, polyline) reject order-2 evaluation.
class Curve {
public:
    struct CircleArc {
        double curvature; // > 0
    };
    struct AxisPath {
        std::vector<int> directions;  // orthogonal axis indices, in order
        std::vector<double> lengths;  // per-segment lengths
    };
    struct CircArc {
        double curvature;   // magnitude, > 0
        int orientation;    // +1 or -1
        double phase;       // start tangent angle (derived for C^1 chaining)
        double length;
        double x0, y0;      // start point (derived)
    };
    struct PiecewiseCircular {
        std::vector<CircArc> arcs;
    };
    struct Polyline {
        std::vector<double> timestamps;  // strictly increasing, starts at 0
        std::vector<Vec> vertices;       // timestamps.size() points in R^d
        bool unit_speed;                 // declared unit-speed contract
    };

    static Curve circle_arc(double curvature, double length);
    static Curve axis_path(std::vector<int> directions, std::vector<double> lengths, int dim);
    // Arcs are chained with continuous position and tangent; initial_phase is
    // the start tangent angle of the first arc.
    static Curve piecewise_circular(const std::vector<double>& curvatures,
                                    const std::vector<int>& orientations,
                                    const std::vector<double>& lengths,
                                    double initial_phase = 0.0);
    // Vertices with timestamps. By default the declared unit-speed contract is
    // enforced (segment speeds 1 within 1e-9); with renormalize the
    // timestamps are replaced by cumulative arc length.
    static Curve polyline(std::vector<Vec> vertices, std::vector<double> timestamps,
                          bool renormalize = false);
    // Chord polyline without the unit-speed contract (timestamps kept from the
    // source parametrization); used by sample_polyline.
    static Curve chord_polyline(std::vector<Vec> vertices, std::vector<double> timestamps);

    CurveKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double length() const { return length_; }
    const Polyline& as_polyline() const;
    const AxisPath& as_axis_path() const;

    bool piecewise_linear() const {
        return kind_ == CurveKind::axis_path || kind_ == CurveKind::polyline;
    }

    /// Position (order 0), derivative (order 1) or second derivative (order 2)
    /// at arc-length time t in [0, length].
    Vec evaluate(double t, int order) const;

    /// |gamma''(t)|; UnsupportedDerivative for piecewise-linear kinds.
    double curvature_at(double t) const;

private:
    Curve() = default;
    CurveKind kind_{};
    int dim_ = 0;
    double length_ = 0.0;
    std::variant<CircleArc, AxisPath, PiecewiseCircular, Polyline> data_;
};

/// Squared curvature Gamma_j = |gamma''_{t_j}|^2 on the grid t_j = (j/n)*l,
/// j = 1..n, plus the sup-norm M of |gamma''| and the Lipschitz constant L of
/// t -> |gamma''_t|^{-1} (declared, or finite-difference estimated).
struct CurvatureProfile {
    int n = 0;
    std::vector<double> gamma;  // gamma[j-1] = Gamma_j
    double M = 0.0;
    double L = 0.0;
};

/// Chord polyline through m+1 equally spaced arc-length points.
Curve sample_polyline(const Curve& curve, int segments);

CurvatureProfile curvature_profile(const Curve& curve, int n,
                                   std::optional<double> declared_L = std::nullopt);

/// Central-difference estimate of the Lipschitz constant of t -> |gamma''|^{-1}
/// on a 10^4 grid. Advisory only.
double estimate_inverse_curvature_lipschitz(const Curve& curve);

} // namespace signorm

#endif
