#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Normalized spin state (amp_up, amp_down).
struct SpinVector {
    Complex up{1.0, 0.0};
    Complex down{0.0, 0.0};

    void validate(double tol = 1e-12) const;
};

/// cos(alpha_s)|up> + e^{i beta_s} sin(alpha_s)|down>
SpinVector spin_from_angles(double alpha_s, double beta_s);

SpinVector xi1_spin();  // (|up> + i|down>)/sqrt 2
SpinVector xi2_spin();  // (|up> + |down>)/sqrt 2

/// Joint spin-position amplitudes on a dense lattice window
/// [j_min, j_min + width - 1]; up[k], down[k] hold a(j_min+k, t), b(j_min+k, t).
struct WalkerState {
    std::int64_t j_min = 0;
    std::vector<Complex> up;
    std::vector<Complex> down;
    std::int64_t t = 0;

    std::size_t width() const { return up.size(); }
    std::int64_t j_max() const { return j_min + static_cast<std::int64_t>(width()) - 1; }
    double norm() const;  // sum over sites of |a|^2 + |b|^2

    /// Throws ContractError if up/down lengths differ, are empty, or the norm
    /// deviates from 1 beyond tol.
    void validate(double norm_tol = 1e-10) const;
};

/// Walker at a single site j0 with the given spin; t = 0.
WalkerState localized(const SpinVector& spin, std::int64_t j0);

/// Product state
///   (cos a_s |up> + e^{i b_s} sin a_s |down>) x (cos a_p |-1> + e^{i b_p} sin a_p |+1>)
WalkerState two_site(double alpha_s, double beta_s, double alpha_p, double beta_p);

/// Spin factored against a discretized Gaussian position profile
/// psi(j) >= 0, psi(j)^2 ~ exp(-j^2 / (2 sigma^2)) on [-cutoff, cutoff],
/// renormalized to exactly 1 after truncation. cutoff <= 0 means ceil(6 sigma).
WalkerState gaussian(const SpinVector& spin, double sigma, std::int64_t cutoff = 0);

/// P(j) = |a(j)|^2 + |b(j)|^2 over the state's window.
struct PositionDistribution {
    std::int64_t j_min = 0;
    std::vector<double> p;

    double at(std::int64_t j) const;
    double total() const;
};

PositionDistribution position_distribution(const WalkerState& s);

/// Debug dump, one row per site: j, Re a, Im a, Re b, Im b.
void write_state_csv(std::ostream& out, const WalkerState& s);

}  // namespace qwalk
