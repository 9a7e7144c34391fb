#include "signorm/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "signorm/limit.hpp"
#include "signorm/orderstats.hpp"
#include "signorm/tensor.hpp"

namespace signorm {

namespace {

const std::vector<std::string> kRoutes = {
    "tensor", "mc-product", "mc-exponential", "kernel",
    "limit-mc", "limit-ode", "expansion"};

bool is_mc_route(const std::string& r) {
    return r == "mc-product" || r == "mc-exponential" || r == "kernel" || r == "limit-mc";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split(s, ','))
        out.push_back(std::stod(tok));
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : split(s, ','))
        out.push_back(std::stoi(tok));
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Curve parse_curve_spec(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto pos = line.find_first_of(" \t");
        if (pos == std::string::npos)
            throw InvalidSpec("curve spec line without value: " + line);
        const std::string key = line.substr(0, pos);
        std::string value = line.substr(pos + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        kv[key] = value;
    }
    const auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw InvalidSpec("curve spec missing field: " + key);
        return it->second;
    };
    const std::string kind = need("kind");
    if (kind == "circle-arc") {
        return Curve::circle_arc(std::stod(need("curvature")), std::stod(need("length")));
    }
    if (kind == "axis-path") {
        return Curve::axis_path(parse_ints(need("directions")), parse_doubles(need("lengths")),
                                std::stoi(need("dim")));
    }
    if (kind == "piecewise-circular") {
        const double phase = kv.count("phase") ? std::stod(kv["phase"]) : 0.0;
        return Curve::piecewise_circular(parse_doubles(need("curvatures")),
                                         parse_ints(need("orientations")),
                                         parse_doubles(need("lengths")), phase);
    }
    if (kind == "polyline") {
        std::vector<Vec> vertices;
        for (const auto& pt : split(need("vertices"), ';'))
            vertices.push_back(parse_doubles(pt));
        const bool renorm = kv.count("renormalize") && kv["renormalize"] == "1";
        return Curve::polyline(std::move(vertices), parse_doubles(need("timestamps")), renorm);
    }
    throw InvalidSpec("unknown curve kind: " + kind);
}

Curve parse_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpec("cannot open curve file: " + path);
    return parse_curve_spec(in);
}

void validate(const ExperimentConfig& config) {
    if (!config.curve && config.curve_path.empty())
        throw InvalidSpec("no curve given");
    if (config.routes.empty()) throw InvalidSpec("at least one route required");
    for (const auto& r : config.routes)
        if (std::find(kRoutes.begin(), kRoutes.end(), r) == kRoutes.end())
            throw InvalidSpec("unknown route: " + r);
    if (config.degrees.empty()) throw InvalidSpec("at least one degree required");
    for (int d : config.degrees)
        if (d < 1) throw InvalidSpec("degrees must be >= 1");
    const bool mc = std::any_of(config.routes.begin(), config.routes.end(), is_mc_route);
    if (mc && config.replicates < 2)
        throw InvalidSpec("MC routes require replicates >= 2");
    if (mc && !config.seed)
        throw InvalidSpec("MC routes require a seed");
    if (config.format != "csv" && config.format != "json")
        throw InvalidSpec("format must be csv or json");
    if (config.grid < 1) throw InvalidSpec("grid must be >= 1");
    if (config.truncation < 1) throw InvalidSpec("truncation must be >= 1");
}

std::vector<ResultRow> run(const ExperimentConfig& config) {
    validate(config);
    const Curve curve = config.curve ? *config.curve : parse_curve_file(config.curve_path);
    const std::uint64_t seed = config.seed.value_or(0);

    std::vector<ResultRow> rows;
    const auto timed = [&](const auto& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        return config.timing
                   ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                   : 0.0;
    };

    for (const auto& route : config.routes) {
        if (route == "tensor") {
            const int maxd = *std::max_element(config.degrees.begin(), config.degrees.end());
            std::optional<TruncatedTensorSeries> sig;
            double ms = timed([&] {
                const Curve poly = curve.piecewise_linear()
                                       ? curve
                                       : sample_polyline(curve, config.grid);
                sig = signature(poly, maxd);
            });
            for (int n : config.degrees) {
                double lf = std::lgamma(n + 1.0);
                const double value =
                    std::exp(2.0 * (lf + std::log(hs_norm(*sig, n))));
                rows.push_back({route, n, value, std::nullopt, ms, seed});
                ms = 0.0;  // signature shared across degrees
            }
        } else if (route == "mc-product" || route == "mc-exponential") {
            const auto form = route == "mc-product" ? EstimatorForm::product
                                                    : EstimatorForm::exponential;
            for (int n : config.degrees) {
                EstimatorResult res;
                const double ms = timed([&] {
                    res = norm_estimator(curve, n, config.replicates, form, seed);
                });
                rows.push_back({route, n, res.mean, res.stderr_, ms, seed});
            }
        } else if (route == "kernel") {
            for (int n : config.degrees) {
                KernelEstimate est;
                const double ms = timed([&] {
                    est = kernel_estimator(curve, curve, n, config.replicates,
                                           config.truncation, seed);
                });
                rows.push_back({route, n, est.result.mean, est.result.stderr_, ms, seed});
            }
        } else if (route == "limit-mc" || route == "limit-ode") {
            // Estimate of the limit constant c(1): sqrt of the bridge
            // exponential functional with D = 1/2. Degree column is 0.
            const CurvatureProfile profile = curvature_profile(curve, config.grid);
            if (route == "limit-mc") {
                EstimatorResult res;
                const double ms = timed([&] {
                    res = r_nD_mc(profile, 0.5, config.replicates, seed);
                });
                const double c = std::sqrt(res.mean);
                rows.push_back({route, 0, c, res.stderr_ / (2.0 * c), ms, seed});
            } else {
                double r = 0.0;
                const double ms = timed([&] { r = r_nD_ode(profile, 0.5); });
                rows.push_back({route, 0, std::sqrt(r), std::nullopt, ms, seed});
            }
        } else if (route == "expansion") {
            const CurvatureProfile profile = curvature_profile(curve, config.grid);
            ExpansionTerms terms;
            const double ms = timed([&] { terms = expansion_terms(profile, config.grid); });
            rows.push_back({"expansion-term1", 0, terms.term1, std::nullopt, ms, seed});
            rows.push_back({"expansion-term2", 0, terms.term2, std::nullopt, 0.0, seed});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.route, a.degree) < std::tie(b.route, b.degree);
    });
    return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "route,degree,value,stderr,wall_ms,seed\n";
    for (const auto& r : rows) {
        out << r.route << ',' << r.degree << ',' << fmt_double(r.value) << ',';
        if (r.stderr_) out << fmt_double(*r.stderr_);
        out << ',' << fmt_double(r.wall_ms) << ',' << r.seed << '\n';
    }
    return out.str();
}

std::string to_json(const std::vector<ResultRow>& rows, const ExperimentConfig& config) {
    nlohmann::json j;
    j["config"] = {
        {"curve", config.curve_path},
        {"routes", config.routes},
        {"degrees", config.degrees},
        {"replicates", config.replicates},
        {"seed", config.seed ? nlohmann::json(*config.seed) : nlohmann::json()},
        {"truncation", config.truncation},
        {"grid", config.grid},
        {"tolerance", config.tolerance},
        {"format", config.format},
    };
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row = {
            {"route", r.route}, {"degree", r.degree}, {"value", r.value},
            {"wall_ms", r.wall_ms}, {"seed", r.seed}};
        row["stderr"] = r.stderr_ ? nlohmann::json(*r.stderr_) : nlohmann::json();
        j["rows"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

std::vector<CompareEntry> compare_report(const std::vector<ResultRow>& rows) {
    std::map<int, std::vector<const ResultRow*>> by_degree;
    for (const auto& r : rows) by_degree[r.degree].push_back(&r);
    std::vector<CompareEntry> out;
    for (const auto& [degree, group] : by_degree) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t k = i + 1; k < group.size(); ++k) {
                const auto& a = *group[i];
                const auto& b = *group[k];
                if (a.route == b.route) continue;
                CompareEntry e;
                e.degree = degree;
                e.route_a = a.route;
                e.route_b = b.route;
                const double sa = a.stderr_.value_or(0.0);
                const double sb = b.stderr_.value_or(0.0);
                const double se = std::sqrt(sa * sa + sb * sb);
                if (se == 0.0) {
                    e.exact = true;
                    e.pass = a.value == b.value;
                } else {
                    e.z = std::abs(a.value - b.value) / se;
                    e.pass = e.z <= 3.0;
                }
                out.push_back(std::move(e));
            }
        }
    }
    return out;
}

} // namespace signorm
