#pragma once

#include <complex>
#include <string_view>

namespace qwalk {

using Complex = std::complex<double>;

/// Three-angle parameterization of the SU(2) coin family:
/// q biases the up/down split, theta and phi set the relative phases.
struct CoinParams {
    double q = 0.5;
    double theta = 0.0;
    double phi = 0.0;

    /// Throws ContractError unless q in [0,1] and theta, phi in [0, 2pi).
    void validate() const;
};

/// 2x2 unitary acting on the spin before each conditional shift.
struct CoinMatrix {
    Complex uu, ud, du, dd;

    /// Entrywise check of C^dagger C = 1.
    bool is_unitary(double tol = 1e-12) const;
};

/// Builds the family member
///   [ sqrt(q)              sqrt(1-q) e^{i theta}          ]
///   [ sqrt(1-q) e^{i phi}  -sqrt(q) e^{i (theta + phi)}   ]
CoinMatrix coin_from_params(const CoinParams& p);

// The named coins are explicit matrices. The parameterized family cannot
// reach the true identity (q=1, theta=phi=0 gives diag(1,-1)), and relative
// phases matter once superpositions form, so these are not routed through
// coin_from_params.
CoinMatrix hadamard_coin();   // (1/sqrt 2) [[1,1],[1,-1]]
CoinMatrix fourier_coin();    // (1/sqrt 2) [[1,i],[i,1]]
CoinMatrix sigma1_coin();     // [[0,1],[1,0]]  spin flip
CoinMatrix identity_coin();   // [[1,0],[0,1]]

/// Lookup by name: one of "hadamard", "fourier", "sigma1", "identity".
/// Unknown names throw ConfigError.
CoinMatrix named_coin(std::string_view name);

}  // namespace qwalk
