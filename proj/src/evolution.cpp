#include "qwalk/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double kCoinUnitaryTol = 1e-12;
constexpr double kNormDriftTol = 1e-9;

struct RecordFlags {
    bool moments = true;
    bool trace_distance = true;
};

RecordFlags parse_record(const std::vector<std::string>& names) {
    if (names.empty()) return {};
    RecordFlags f{false, false};
    for (const auto& n : names) {
        if (n == "moments")
            f.moments = true;
        else if (n == "trace_distance")
            f.trace_distance = true;
        else if (n != "entropy" && n != "bloch")  // always computed, free after reduce
            throw ConfigError("unknown observable name in record list: " + n);
    }
    return f;
}

}  // namespace

void WalkConfig::validate() const {
    if (steps < 1) throw ConfigError("steps must be >= 1");
    initial.validate();
    validate_policy(policy, steps);
    parse_record(record);
}

Walker::Walker(const WalkerState& initial, int total_steps) {
    if (total_steps < 0) throw ContractError("negative step budget");
    initial.validate();
    w0_ = initial.width();
    total_steps_ = total_steps;
    t0_ = initial.t;
    pad_ = static_cast<std::size_t>(total_steps) + 1;  // one guard cell each side
    slot0_j_ = initial.j_min - static_cast<std::int64_t>(pad_);
    const std::size_t size = w0_ + 2 * pad_;
    a_.assign(size, Complex(0, 0));
    b_.assign(size, Complex(0, 0));
    next_a_.assign(size, Complex(0, 0));
    next_b_.assign(size, Complex(0, 0));
    std::copy(initial.up.begin(), initial.up.end(), a_.begin() + static_cast<std::ptrdiff_t>(pad_));
    std::copy(initial.down.begin(), initial.down.end(),
              b_.begin() + static_cast<std::ptrdiff_t>(pad_));
}

void Walker::advance(const CoinMatrix& c) {
    if (steps_taken_ >= total_steps_)
        throw ContractError("walker advanced past its preallocated step budget");
    if (!c.is_unitary(kCoinUnitaryTol)) throw ContractError("coin matrix is not unitary");
    const std::size_t lo = pad_ - static_cast<std::size_t>(steps_taken_ + 1);
    const std::size_t hi = pad_ + w0_ - 1 + static_cast<std::size_t>(steps_taken_ + 1);
    const Complex cuu = c.uu, cud = c.ud, cdu = c.du, cdd = c.dd;
    const Complex* a = a_.data();
    const Complex* b = b_.data();
    Complex* na = next_a_.data();
    Complex* nb = next_b_.data();
    for (std::size_t s = lo; s <= hi; ++s) {
        na[s] = cuu * a[s - 1] + cud * b[s - 1];
        nb[s] = cdu * a[s + 1] + cdd * b[s + 1];
    }
    a_.swap(next_a_);
    b_.swap(next_b_);
    ++steps_taken_;
}

Walker::Reduction Walker::reduce() const {
    const std::size_t lo = pad_ - static_cast<std::size_t>(steps_taken_);
    const std::size_t hi = pad_ + w0_ - 1 + static_cast<std::size_t>(steps_taken_);
    double alpha = 0.0, beta = 0.0;
    Complex gamma(0, 0);
    for (std::size_t s = lo; s <= hi; ++s) {
        alpha += std::norm(a_[s]);
        beta += std::norm(b_[s]);
        gamma += a_[s] * std::conj(b_[s]);
    }
    return {ReducedDensity{alpha, gamma}, alpha + beta};
}

Moments Walker::moments() const {
    const std::size_t lo = pad_ - static_cast<std::size_t>(steps_taken_);
    const std::size_t hi = pad_ + w0_ - 1 + static_cast<std::size_t>(steps_taken_);
    double m = 0.0, m2 = 0.0;
    for (std::size_t s = lo; s <= hi; ++s) {
        const double j = static_cast<double>(slot0_j_ + static_cast<std::int64_t>(s));
        const double p = std::norm(a_[s]) + std::norm(b_[s]);
        m += j * p;
        m2 += j * j * p;
    }
    return {m, std::max(m2 - m * m, 0.0)};
}

SpinHint Walker::definite_spin(double tol) const {
    const auto r = reduce();
    if (r.rho.alpha >= r.norm - tol) return SpinHint::up;
    if (r.rho.alpha <= tol) return SpinHint::down;
    return SpinHint::none;
}

WalkerState Walker::snapshot() const {
    WalkerState s;
    const std::size_t lo = pad_ - static_cast<std::size_t>(steps_taken_);
    const std::size_t width = w0_ + 2 * static_cast<std::size_t>(steps_taken_);
    s.j_min = slot0_j_ + static_cast<std::int64_t>(lo);
    s.t = t();
    s.up.assign(a_.begin() + static_cast<std::ptrdiff_t>(lo),
                a_.begin() + static_cast<std::ptrdiff_t>(lo + width));
    s.down.assign(b_.begin() + static_cast<std::ptrdiff_t>(lo),
                  b_.begin() + static_cast<std::ptrdiff_t>(lo + width));
    return s;
}

WalkerState step(const WalkerState& s, const CoinMatrix& c) {
    Walker w(s, 1);
    w.advance(c);
    return w.snapshot();
}

Trajectory run(const WalkConfig& cfg) {
    cfg.validate();
    const RecordFlags flags = parse_record(cfg.record);
    const bool needs_hint = std::holds_alternative<CrwEmulationPolicy>(cfg.policy);

    RngStream rng = derive_stream(cfg.seed);
    Walker walker(cfg.initial, cfg.steps);
    Trajectory traj;
    traj.records.reserve(static_cast<std::size_t>(cfg.steps));

    auto prev_rho = reduce(cfg.initial);
    for (int t = 1; t <= cfg.steps; ++t) {
        CoinMatrix c;
        try {
            const SpinHint hint = needs_hint ? walker.definite_spin() : SpinHint::none;
            c = coin_at(cfg.policy, t, rng, hint);
        } catch (const ContractError& e) {
            throw ContractError("coin policy failed at step " + std::to_string(t) + ": " +
                                e.what());
        }
        walker.advance(c);

        const auto red = walker.reduce();
        if (std::abs(red.norm - 1.0) > kNormDriftTol)
            throw ContractError("norm drifted to " + std::to_string(red.norm) + " at step " +
                                std::to_string(t));
        ObservableRecord rec;
        rec.t = walker.t();
        rec.alpha = red.rho.alpha;
        rec.gamma = red.rho.gamma;
        rec.s_e = entropy(red.rho);
        rec.bloch = bloch(red.rho);
        if (flags.trace_distance) rec.trace_distance = trace_distance(prev_rho, red.rho);
        if (flags.moments) {
            const Moments m = walker.moments();
            rec.mean_j = m.mean;
            rec.variance = m.variance;
        }
        traj.records.push_back(rec);
        prev_rho = red.rho;
    }
    traj.final_state = walker.snapshot();
    return traj;
}

namespace {

// Row-major dense complex matrix, just enough for the oracle.
struct DenseMatrix {
    std::size_t dim;
    std::vector<Complex> m;

    explicit DenseMatrix(std::size_t d) : dim(d), m(d * d, Complex(0, 0)) {}
    Complex& at(std::size_t r, std::size_t c) { return m[r * dim + c]; }
    Complex at(std::size_t r, std::size_t c) const { return m[r * dim + c]; }

    DenseMatrix mul(const DenseMatrix& rhs) const {
        DenseMatrix out(dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t k = 0; k < dim; ++k) {
                const Complex v = at(r, k);
                if (v == Complex(0, 0)) continue;
                for (std::size_t c = 0; c < dim; ++c) out.at(r, c) += v * rhs.at(k, c);
            }
        return out;
    }

    std::vector<Complex> apply(const std::vector<Complex>& v) const {
        std::vector<Complex> out(dim, Complex(0, 0));
        for (std::size_t r = 0; r < dim; ++r) {
            Complex acc(0, 0);
            for (std::size_t c = 0; c < dim; ++c) acc += at(r, c) * v[c];
            out[r] = acc;
        }
        return out;
    }
};

}  // namespace

WalkerState dense_oracle(const WalkConfig& cfg) {
    cfg.validate();
    if (cfg.steps > 10)
        throw ContractError("dense oracle refuses more than 10 steps (got " +
                            std::to_string(cfg.steps) + ")");

    // Truncated lattice covering the light cone; basis index = 2*site + spin.
    const std::size_t n = static_cast<std::size_t>(cfg.steps);
    const std::size_t sites = cfg.initial.width() + 2 * n;
    const std::size_t dim = 2 * sites;
    const std::int64_t j_lo = cfg.initial.j_min - static_cast<std::int64_t>(n);

    std::vector<Complex> psi(dim, Complex(0, 0));
    for (std::size_t k = 0; k < cfg.initial.width(); ++k) {
        psi[2 * (k + n)] = cfg.initial.up[k];
        psi[2 * (k + n) + 1] = cfg.initial.down[k];
    }

    DenseMatrix shift(dim);  // up moves right, down moves left; edge flux drops out
    for (std::size_t k = 0; k < sites; ++k) {
        if (k + 1 < sites) shift.at(2 * (k + 1), 2 * k) = Complex(1, 0);
        if (k >= 1) shift.at(2 * (k - 1) + 1, 2 * k + 1) = Complex(1, 0);
    }

    const bool needs_hint = std::holds_alternative<CrwEmulationPolicy>(cfg.policy);
    RngStream rng = derive_stream(cfg.seed);
    for (int t = 1; t <= cfg.steps; ++t) {
        SpinHint hint = SpinHint::none;
        if (needs_hint) {
            double alpha = 0.0, norm = 0.0;
            for (std::size_t k = 0; k < sites; ++k) {
                alpha += std::norm(psi[2 * k]);
                norm += std::norm(psi[2 * k]) + std::norm(psi[2 * k + 1]);
            }
            if (alpha >= norm - 1e-9)
                hint = SpinHint::up;
            else if (alpha <= 1e-9)
                hint = SpinHint::down;
        }
        const CoinMatrix c = coin_at(cfg.policy, t, rng, hint);

        DenseMatrix coin_full(dim);  // C x 1 on the truncated lattice
        for (std::size_t k = 0; k < sites; ++k) {
            coin_full.at(2 * k, 2 * k) = c.uu;
            coin_full.at(2 * k, 2 * k + 1) = c.ud;
            coin_full.at(2 * k + 1, 2 * k) = c.du;
            coin_full.at(2 * k + 1, 2 * k + 1) = c.dd;
        }
        psi = shift.mul(coin_full).apply(psi);
    }

    WalkerState out;
    out.j_min = j_lo;
    out.t = cfg.initial.t + cfg.steps;
    out.up.resize(sites);
    out.down.resize(sites);
    for (std::size_t k = 0; k < sites; ++k) {
        out.up[k] = psi[2 * k];
        out.down[k] = psi[2 * k + 1];
    }
    return out;
}

}  // namespace qwalk
