#pragma once

#include <span>
#include <utility>
#include <vector>

namespace qwalk {

/// A (t, y) series, t >= 1, y > 0 where fitting happens.
using Series = std::vector<std::pair<double, double>>;

/// Turn a per-step array (index k holds the value at t = k+1) into a Series.
Series series_from_steps(std::span<const double> y);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;  // in ln y at ln t = 0
    std::pair<double, double> slope_ci_95{0.0, 0.0};
    double r_squared = 0.0;
    int points_used = 0;
    int t_min_used = 0;
};

/// Ordinary least squares on (ln t, ln y) over points with t >= t_min; the
/// 95% slope interval uses the OLS standard error with the Student-t
/// quantile. Nonpositive y or fewer than 3 usable points is a domain error.
FitResult loglog_fit(const Series& series, int t_min);

struct PrefactorResult {
    double prefactor = 0.0;
    std::pair<double, double> ci_95{0.0, 0.0};
    int points_used = 0;
};

/// Closed-form least-squares amplitude for the model y = a * t^exponent with
/// the exponent held fixed, over t >= t_min.
PrefactorResult fixed_exponent_prefactor(const Series& series, double exponent, int t_min);

/// loglog_fit applied to a dispersion series <sqrt(sigma^2)>(t).
FitResult dispersion_exponent(const Series& series, int t_min);

/// "ballistic" (slope near 1), "diffusive" (near 1/2) or "other".
const char* classify_dispersion(double slope);

}  // namespace qwalk
