#pragma once

#include <array>
#include <optional>

#include "qwalk/state.hpp"

namespace qwalk {

/// Reduced spin density matrix rho_C = [[alpha, gamma], [conj(gamma), 1-alpha]]
/// obtained by tracing out position. beta = 1 - alpha is implied.
struct ReducedDensity {
    double alpha = 1.0;
    Complex gamma{0.0, 0.0};

    /// PSD within tolerance: alpha(1-alpha) - |gamma|^2 >= -1e-12.
    void validate() const;
};

/// alpha = sum_j |a(j)|^2, gamma = sum_j a(j) conj(b(j)).
ReducedDensity reduce(const WalkerState& s);

/// Von Neumann entropy of rho_C in bits: eigenvalues
/// lambda_pm = 1/2 +- sqrt(1/4 - alpha(1-alpha) + |gamma|^2), clamped to
/// [0,1] (clamps beyond 1e-9 raise ContractError), 0 log 0 := 0.
double entropy(const ReducedDensity& rho);

/// Bloch vector with rho_C = (1/2)(1 + sum_k r_k sigma_k):
/// r1 = 2 Re gamma, r2 = -2 Im gamma, r3 = 2 alpha - 1.
std::array<double, 3> bloch(const ReducedDensity& rho);

/// Trace distance between two reduced states via the Bloch form
/// D = (1/2) sqrt(dr1^2 + dr2^2 + dr3^2); equals half the singular value sum
/// of the difference matrix.
double trace_distance(const ReducedDensity& prev, const ReducedDensity& curr);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// mean = sum j P(j), variance = sum j^2 P(j) - mean^2.
Moments moments(const WalkerState& s);

/// Per-step record of everything the paper measures.
struct ObservableRecord {
    std::int64_t t = 0;
    double s_e = 0.0;
    double alpha = 0.0;
    Complex gamma{0.0, 0.0};
    std::array<double, 3> bloch{0.0, 0.0, 0.0};
    std::optional<double> mean_j;
    std::optional<double> variance;
    std::optional<double> trace_distance;
};

}  // namespace qwalk
