#include "qwalk/coin.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void CoinParams::validate() const {
    if (!(q >= 0.0 && q <= 1.0))
        throw ContractError("coin parameter q out of [0,1]: " + std::to_string(q));
    if (!(theta >= 0.0 && theta < kTwoPi))
        throw ContractError("coin parameter theta out of [0,2pi): " + std::to_string(theta));
    if (!(phi >= 0.0 && phi < kTwoPi))
        throw ContractError("coin parameter phi out of [0,2pi): " + std::to_string(phi));
}

bool CoinMatrix::is_unitary(double tol) const {
    // rows of C^dagger C against the identity
    const Complex r00 = std::conj(uu) * uu + std::conj(du) * du;
    const Complex r01 = std::conj(uu) * ud + std::conj(du) * dd;
    const Complex r11 = std::conj(ud) * ud + std::conj(dd) * dd;
    return std::abs(r00 - 1.0) <= tol && std::abs(r01) <= tol && std::abs(r11 - 1.0) <= tol;
}

CoinMatrix coin_from_params(const CoinParams& p) {
    p.validate();
    const double rq = std::sqrt(p.q);
    const double rr = std::sqrt(1.0 - p.q);
    return CoinMatrix{
        Complex(rq, 0.0),
        rr * std::polar(1.0, p.theta),
        rr * std::polar(1.0, p.phi),
        -rq * std::polar(1.0, p.theta + p.phi),
    };
}

CoinMatrix hadamard_coin() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {Complex(s, 0), Complex(s, 0), Complex(s, 0), Complex(-s, 0)};
}

CoinMatrix fourier_coin() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {Complex(s, 0), Complex(0, s), Complex(0, s), Complex(s, 0)};
}

CoinMatrix sigma1_coin() { return {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)}; }

CoinMatrix identity_coin() { return {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)}; }

CoinMatrix named_coin(std::string_view name) {
    if (name == "hadamard") return hadamard_coin();
    if (name == "fourier") return fourier_coin();
    if (name == "sigma1") return sigma1_coin();
    if (name == "identity") return identity_coin();
    throw ConfigError("unknown coin name: " + std::string(name));
}

}  // namespace qwalk
