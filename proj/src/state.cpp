#include "qwalk/state.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

void SpinVector::validate(double tol) const {
    const double n = std::norm(up) + std::norm(down);
    if (std::abs(n - 1.0) > tol)
        throw ContractError("spin vector not normalized: |amp|^2 = " + std::to_string(n));
}

SpinVector spin_from_angles(double alpha_s, double beta_s) {
    return {Complex(std::cos(alpha_s), 0.0), std::polar(std::sin(alpha_s), beta_s)};
}

SpinVector xi1_spin() {
    const double s = 1.0 / std::sqrt(2.0);
    return {Complex(s, 0.0), Complex(0.0, s)};
}

SpinVector xi2_spin() {
    const double s = 1.0 / std::sqrt(2.0);
    return {Complex(s, 0.0), Complex(s, 0.0)};
}

double WalkerState::norm() const {
    double n = 0.0;
    for (const auto& a : up) n += std::norm(a);
    for (const auto& b : down) n += std::norm(b);
    return n;
}

void WalkerState::validate(double norm_tol) const {
    if (up.size() != down.size()) throw ContractError("up/down amplitude lengths differ");
    if (up.empty()) throw ContractError("walker window is empty");
    const double n = norm();
    if (std::abs(n - 1.0) > norm_tol)
        throw ContractError("walker norm drifted to " + std::to_string(n));
}

WalkerState localized(const SpinVector& spin, std::int64_t j0) {
    spin.validate();
    WalkerState s;
    s.j_min = j0;
    s.up = {spin.up};
    s.down = {spin.down};
    return s;
}

WalkerState two_site(double alpha_s, double beta_s, double alpha_p, double beta_p) {
    const SpinVector spin = spin_from_angles(alpha_s, beta_s);
    const Complex pos_m1(std::cos(alpha_p), 0.0);
    const Complex pos_p1 = std::polar(std::sin(alpha_p), beta_p);
    WalkerState s;
    s.j_min = -1;
    s.up = {spin.up * pos_m1, Complex(0, 0), spin.up * pos_p1};
    s.down = {spin.down * pos_m1, Complex(0, 0), spin.down * pos_p1};
    return s;
}

WalkerState gaussian(const SpinVector& spin, double sigma, std::int64_t cutoff) {
    spin.validate();
    if (!(sigma > 0.0)) throw ContractError("gaussian sigma must be positive");
    if (cutoff <= 0) cutoff = static_cast<std::int64_t>(std::ceil(6.0 * sigma));
    const std::size_t width = static_cast<std::size_t>(2 * cutoff + 1);

    std::vector<double> psi(width);
    double sq = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
        const double j = static_cast<double>(static_cast<std::int64_t>(k) - cutoff);
        psi[k] = std::exp(-j * j / (4.0 * sigma * sigma));  // amplitude = sqrt of the pdf shape
        sq += psi[k] * psi[k];
    }
    const double inv = 1.0 / std::sqrt(sq);  // renormalize after truncation

    WalkerState s;
    s.j_min = -cutoff;
    s.up.resize(width);
    s.down.resize(width);
    for (std::size_t k = 0; k < width; ++k) {
        s.up[k] = spin.up * (psi[k] * inv);
        s.down[k] = spin.down * (psi[k] * inv);
    }
    return s;
}

double PositionDistribution::at(std::int64_t j) const {
    const std::int64_t k = j - j_min;
    if (k < 0 || k >= static_cast<std::int64_t>(p.size())) return 0.0;
    return p[static_cast<std::size_t>(k)];
}

double PositionDistribution::total() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

PositionDistribution position_distribution(const WalkerState& s) {
    PositionDistribution d;
    d.j_min = s.j_min;
    d.p.resize(s.width());
    for (std::size_t k = 0; k < s.width(); ++k)
        d.p[k] = std::norm(s.up[k]) + std::norm(s.down[k]);
    return d;
}

void write_state_csv(std::ostream& out, const WalkerState& s) {
    out << "j,re_a,im_a,re_b,im_b\n";
    char buf[160];
    for (std::size_t k = 0; k < s.width(); ++k) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<long long>(s.j_min + static_cast<std::int64_t>(k)),
                      s.up[k].real(), s.up[k].imag(), s.down[k].real(), s.down[k].imag());
        out << buf;
    }
}

}  // namespace qwalk
