#include "qwalk/analysis.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

double t_quantile_975(int dof) {
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.975);
}

std::vector<std::pair<double, double>> select_points(const Series& series, int t_min,
                                                     std::size_t min_points) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [t, y] : series) {
        if (t < static_cast<double>(t_min)) continue;
        if (!(y > 0.0))
            throw ConfigError("power-law fit requires y > 0, got y = " + std::to_string(y) +
                              " at t = " + std::to_string(t));
        pts.push_back({t, y});
    }
    if (pts.size() < min_points)
        throw ConfigError("power-law fit needs at least " + std::to_string(min_points) +
                          " points with t >= " + std::to_string(t_min) + ", got " +
                          std::to_string(pts.size()));
    return pts;
}

}  // namespace

Series series_from_steps(std::span<const double> y) {
    Series s;
    s.reserve(y.size());
    for (std::size_t k = 0; k < y.size(); ++k)
        s.push_back({static_cast<double>(k + 1), y[k]});
    return s;
}

FitResult loglog_fit(const Series& series, int t_min) {
    const auto pts = select_points(series, t_min, 3);
    const auto n = static_cast<double>(pts.size());

    double sx = 0.0, sy = 0.0;
    for (const auto& [t, y] : pts) {
        sx += std::log(t);
        sy += std::log(y);
    }
    const double mx = sx / n, my = sy / n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [t, y] : pts) {
        const double dx = std::log(t) - mx;
        const double dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw ConfigError("power-law fit needs at least two distinct t values");

    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    r.points_used = static_cast<int>(pts.size());
    r.t_min_used = t_min;

    const double ss_res = std::max(syy - r.slope * sxy, 0.0);
    r.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    if (pts.size() > 2) {
        const double se = std::sqrt(ss_res / (n - 2.0) / sxx);
        const double half = t_quantile_975(static_cast<int>(pts.size()) - 2) * se;
        r.slope_ci_95 = {r.slope - half, r.slope + half};
    } else {
        r.slope_ci_95 = {r.slope, r.slope};
    }
    return r;
}

PrefactorResult fixed_exponent_prefactor(const Series& series, double exponent, int t_min) {
    const auto pts = select_points(series, t_min, 3);
    const auto n = static_cast<double>(pts.size());

    // regression through the origin on f = t^exponent
    double sff = 0.0, sfy = 0.0;
    for (const auto& [t, y] : pts) {
        const double f = std::pow(t, exponent);
        sff += f * f;
        sfy += f * y;
    }
    PrefactorResult r;
    r.prefactor = sfy / sff;
    r.points_used = static_cast<int>(pts.size());

    double ss_res = 0.0;
    for (const auto& [t, y] : pts) {
        const double e = y - r.prefactor * std::pow(t, exponent);
        ss_res += e * e;
    }
    if (pts.size() > 1) {
        const double se = std::sqrt(ss_res / (n - 1.0) / sff);
        const double half = t_quantile_975(static_cast<int>(pts.size()) - 1) * se;
        r.ci_95 = {r.prefactor - half, r.prefactor + half};
    } else {
        r.ci_95 = {r.prefactor, r.prefactor};
    }
    return r;
}

FitResult dispersion_exponent(const Series& series, int t_min) { return loglog_fit(series, t_min); }

const char* classify_dispersion(double slope) {
    if (std::abs(slope - 1.0) <= 0.1) return "ballistic";
    if (std::abs(slope - 0.5) <= 0.1) return "diffusive";
    return "other";
}

}  // namespace qwalk
