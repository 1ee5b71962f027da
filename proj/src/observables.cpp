#include "qwalk/observables.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double kPsdTol = 1e-12;
constexpr double kClampTol = 1e-9;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double clamp01(double x, const char* what) {
    if (x < 0.0) {
        if (x < -kClampTol)
            throw ContractError(std::string(what) + " below 0 beyond tolerance: " +
                                std::to_string(x));
        return 0.0;
    }
    if (x > 1.0) {
        if (x > 1.0 + kClampTol)
            throw ContractError(std::string(what) + " above 1 beyond tolerance: " +
                                std::to_string(x));
        return 1.0;
    }
    return x;
}

}  // namespace

void ReducedDensity::validate() const {
    if (!(alpha >= -kPsdTol && alpha <= 1.0 + kPsdTol))
        throw ContractError("reduced density alpha out of [0,1]: " + std::to_string(alpha));
    const double det = alpha * (1.0 - alpha) - std::norm(gamma);
    if (det < -kPsdTol)
        throw ContractError("reduced density not positive semidefinite: det = " +
                            std::to_string(det));
}

ReducedDensity reduce(const WalkerState& s) {
    double alpha = 0.0;
    Complex gamma(0.0, 0.0);
    for (std::size_t k = 0; k < s.width(); ++k) {
        alpha += std::norm(s.up[k]);
        gamma += s.up[k] * std::conj(s.down[k]);
    }
    return {alpha, gamma};
}

double entropy(const ReducedDensity& rho) {
    rho.validate();
    const double disc = 0.25 - rho.alpha * (1.0 - rho.alpha) + std::norm(rho.gamma);
    // disc >= 0 analytically; absorb rounding before the sqrt
    const double root = std::sqrt(std::max(disc, 0.0));
    const double lp = clamp01(0.5 + root, "eigenvalue lambda+");
    const double lm = clamp01(0.5 - root, "eigenvalue lambda-");
    return -xlog2x(lp) - xlog2x(lm);
}

std::array<double, 3> bloch(const ReducedDensity& rho) {
    return {2.0 * rho.gamma.real(), -2.0 * rho.gamma.imag(), 2.0 * rho.alpha - 1.0};
}

double trace_distance(const ReducedDensity& prev, const ReducedDensity& curr) {
    const auto rp = bloch(prev);
    const auto rc = bloch(curr);
    const double d1 = rc[0] - rp[0];
    const double d2 = rc[1] - rp[1];
    const double d3 = rc[2] - rp[2];
    return 0.5 * std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
}

Moments moments(const WalkerState& s) {
    double m = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < s.width(); ++k) {
        const double j = static_cast<double>(s.j_min + static_cast<std::int64_t>(k));
        const double p = std::norm(s.up[k]) + std::norm(s.down[k]);
        m += j * p;
        m2 += j * j * p;
    }
    double var = m2 - m * m;
    if (var < 0.0) {
        if (var < -kClampTol) throw ContractError("negative position variance: " + std::to_string(var));
        var = 0.0;
    }
    return {m, var};
}

}  // namespace qwalk
