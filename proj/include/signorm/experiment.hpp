#ifndef SIGNORM_EXPERIMENT_HPP
#define SIGNORM_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "signorm/curves.hpp"

namespace signorm {

/// Route names: tensor | mc-product | mc-exponential | kernel | limit-mc |
/// limit-ode | expansion.
struct ExperimentConfig {
    std::string curve_path;
    std::optional<Curve> curve;  // resolved from curve_path when empty
    std::vector<std::string> routes;
    std::vector<int> degrees;
    int replicates = 10000;
    std::optional<std::uint64_t> seed;
    int truncation = 8;   // kernel series truncation M
    int grid = 512;       // polyline segments / profile and bridge grid
    double tolerance = 1e-10;
    std::string out_path;
    std::string format = "csv";
    bool timing = true;   // when false, wall_ms is written as 0 (reproducible output)
};

struct ResultRow {
    std::string route;
    int degree = 0;
    double value = 0.0;
    std::optional<double> stderr_;
    double wall_ms = 0.0;
    std::uint64_t seed = 0;
};

struct CompareEntry {
    int degree = 0;
    std::string route_a, route_b;
    double z = 0.0;        // |delta| / combined stderr; 0 when exact
    bool exact = false;    // both routes deterministic
    bool pass = false;     // z <= 3, or exact equality
};

/// Parse the flat key-value curve-spec format (one curve per file).
Curve parse_curve_spec(std::istream& in);
Curve parse_curve_file(const std::string& path);

/// Throws InvalidSpec when the config violates its invariants.
void validate(const ExperimentConfig& config);

/// Execute every (route, degree) cell; rows come back sorted by (route, degree).
std::vector<ResultRow> run(const ExperimentConfig& config);

std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows, const ExperimentConfig& config);

/// Pairwise z-scores per degree at the 3-sigma threshold.
std::vector<CompareEntry> compare_report(const std::vector<ResultRow>& rows);

} // namespace signorm

#endif
