#pragma once

// Random-telegraph-noise (RTN) dephasing and amplitude-damping (AD) channels
// as time-dependent Kraus sets. Both kernels are closed form in t, so every
// time point is evaluated directly from t = 0.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dwf/linalg.hpp"
#include "dwf/states.hpp"

namespace dwf {

enum class Regime { Markovian, NonMarkovian, Boundary };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::Markovian: return "markovian";
        case Regime::NonMarkovian: return "non_markovian";
        case Regime::Boundary: return "boundary";
    }
    return "?";
}

struct RtnParams {
    double gamma = 0;  // fluctuation rate
    double b = 0;      // coupling strength
};

struct AdParams {
    double gamma = 0;
    double g = 0;
};

namespace detail {

inline void require_time(double t, const char* who) {
    if (!(t >= 0) || !std::isfinite(t)) {
        std::ostringstream msg;
        msg << who << ": time must be finite and non-negative, got " << t;
        throw ValidationError(msg.str());
    }
}

inline void require_rates(double a, double b, const char* who) {
    if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ValidationError(std::string(who) + ": rates must be finite and positive");
    }
}

inline bool near(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); }

}  // namespace detail

inline Regime classify_rtn(const RtnParams& p) {
    detail::require_rates(p.gamma, p.b, "RTN parameters");
    const double x = 2 * p.b / p.gamma;
    if (detail::near(x * x, 1.0)) return Regime::Boundary;
    return x * x > 1 ? Regime::NonMarkovian : Regime::Markovian;
}

inline Regime classify_ad(const AdParams& p) {
    detail::require_rates(p.gamma, p.g, "AD parameters");
    if (detail::near(2 * p.gamma, p.g)) return Regime::Boundary;
    return 2 * p.gamma < p.g ? Regime::Markovian : Regime::NonMarkovian;
}

/// Memory kernel Λ(t) = e^{-γt}[cos ζγt + sin ζγt / ζ], ζ = sqrt((2b/γ)² − 1),
/// continued to cosh/sinh when ζ is imaginary.
inline double rtn_kernel(double t, const RtnParams& p) {
    detail::require_time(t, "rtn_kernel");
    const Regime regime = classify_rtn(p);
    const double gt = p.gamma * t;
    const double x = 2 * p.b / p.gamma;
    if (regime == Regime::Boundary) return std::exp(-gt) * (1 + gt);
    if (regime == Regime::NonMarkovian) {
        const double zeta = std::sqrt(x * x - 1);
        return std::exp(-gt) * (std::cos(zeta * gt) + std::sin(zeta * gt) / zeta);
    }
    const double zeta = std::sqrt(1 - x * x);
    if (zeta * gt < 1) return std::exp(-gt) * (std::cosh(zeta * gt) + std::sinh(zeta * gt) / zeta);
    // e^{-γt} cosh and e^{-γt} sinh written without overflowing terms
    const double up = std::exp((zeta - 1) * gt), down = std::exp(-(zeta + 1) * gt);
    return 0.5 * (up + down) + 0.5 * (up - down) / zeta;
}

/// Signed excited-state amplitude G(t) = e^{-gt/2}((g/l) sinh(lt/2) + cosh(lt/2)),
/// l = sqrt(g² − 2γg), continued to sin/cos when l is imaginary. Its zeros
/// are the instants of full decay.
inline double ad_amplitude(double t, const AdParams& p) {
    detail::require_time(t, "ad_amplitude");
    const Regime regime = classify_ad(p);
    const double g = p.g;
    if (regime == Regime::Boundary) return std::exp(-g * t / 2) * (1 + g * t / 2);
    if (regime == Regime::NonMarkovian) {
        const double l = std::sqrt(2 * p.gamma * g - g * g);
        return std::exp(-g * t / 2) * (g / l * std::sin(l * t / 2) + std::cos(l * t / 2));
    }
    const double l = std::sqrt(g * g - 2 * p.gamma * g);
    if (l * t / 2 < 1) return std::exp(-g * t / 2) * (g / l * std::sinh(l * t / 2) + std::cosh(l * t / 2));
    const double up = std::exp((l - g) * t / 2), down = std::exp(-(l + g) * t / 2);
    return g / l * 0.5 * (up - down) + 0.5 * (up + down);
}

/// Decay function λ(t) = 1 − G(t)².
inline double ad_decay(double t, const AdParams& p) {
    const double amp = ad_amplitude(t, p);
    const double lambda = 1 - amp * amp;
    if (lambda < -1e-10 || lambda > 1 + 1e-10) {
        std::ostringstream msg;
        msg << "AD decay function left [0,1]: lambda(" << t << ") = " << lambda << " for gamma=" << p.gamma
            << ", g=" << p.g;
        throw KernelViolation(msg.str());
    }
    return std::clamp(lambda, 0.0, 1.0);
}

struct KrausSet {
    int dimension = 0;
    std::vector<Matrix> ops;
    double t = 0;

    /// max |Σ K†K − I|
    double completeness_deviation() const {
        Matrix s = Matrix::Zero(dimension, dimension);
        for (const Matrix& k : ops) s += k.adjoint() * k;
        return max_abs(s - identity(dimension));
    }
};

inline Matrix spin1_x() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = 1 / std::sqrt(2.0);
    return m;
}

inline Matrix spin1_y() {
    const Complex i(0, 1);
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = m(1, 2) = -i / std::sqrt(2.0);
    m(1, 0) = m(2, 1) = i / std::sqrt(2.0);
    return m;
}

inline Matrix spin1_z() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 1;
    m(2, 2) = -1;
    return m;
}

/// S = (Sx Sx + Sy Sy − Sz Sz)/2, which works out to diag(0, 1, 0).
inline Matrix spin1_s() {
    const Matrix sx = spin1_x(), sy = spin1_y(), sz = spin1_z();
    return 0.5 * (sx * sx + sy * sy - sz * sz);
}

inline KrausSet kraus_rtn(int d, double t, const RtnParams& p) {
    const double lam = rtn_kernel(t, p);
    if (std::abs(lam) > 1 + 1e-12) {
        std::ostringstream msg;
        msg << "RTN kernel |Lambda(" << t << ")| = " << std::abs(lam) << " exceeds 1";
        throw KernelViolation(msg.str());
    }
    const double c0 = std::sqrt(std::max(0.0, (1 + lam) / 2));
    const double c1 = std::sqrt(std::max(0.0, (1 - lam) / 2));
    KrausSet ks{d, {}, t};
    if (d == 2) {
        ks.ops = {c0 * identity(2), c1 * pauli(3)};
    } else if (d == 3) {
        ks.ops = {c0 * identity(3), c1 * spin1_z(), c1 * spin1_s()};
    } else {
        throw ValidationError("kraus_rtn: dimension must be 2 or 3, got " + std::to_string(d));
    }
    return ks;
}

inline KrausSet kraus_ad(int d, double t, const AdParams& p) {
    const double lam = ad_decay(t, p);
    const double keep = std::sqrt(1 - lam), jump = std::sqrt(lam);
    KrausSet ks{d, {}, t};
    if (d == 2) {
        Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
        k0(0, 0) = 1;
        k0(1, 1) = keep;
        k1(0, 1) = jump;
        ks.ops = {k0, k1};
    } else if (d == 3) {
        Matrix k0 = Matrix::Zero(3, 3), k1 = Matrix::Zero(3, 3), k2 = Matrix::Zero(3, 3);
        k0(0, 0) = 1;
        k0(1, 1) = k0(2, 2) = keep;
        k1(0, 1) = jump;
        k2(0, 2) = jump;
        ks.ops = {k0, k1, k2};
    } else {
        throw ValidationError("kraus_ad: dimension must be 2 or 3, got " + std::to_string(d));
    }
    return ks;
}

/// All products K_i ⊗ K_j: the same qubit channel acting locally on both
/// halves of a two-qubit state.
inline KrausSet lift_two_qubit(const KrausSet& ks) {
    if (ks.dimension != 2) throw ValidationError("lift_two_qubit: expects a qubit Kraus set");
    KrausSet out{4, {}, ks.t};
    for (const Matrix& a : ks.ops)
        for (const Matrix& b : ks.ops) out.ops.push_back(kron(a, b));
    return out;
}

inline Matrix apply_channel(const Matrix& rho, const KrausSet& ks) {
    require_dimension(rho, ks.dimension, "apply_channel");
    const double dev = ks.completeness_deviation();
    if (dev > 1e-10) {
        std::ostringstream msg;
        msg << "Kraus set at t=" << ks.t << " is not trace preserving (deviation " << dev << ")";
        throw KernelViolation(msg.str());
    }
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix& k : ks.ops) out += k * rho * k.adjoint();
    return out;
}

enum class ChannelFamily { None, Rtn, Ad };

inline const char* to_string(ChannelFamily f) {
    switch (f) {
        case ChannelFamily::None: return "none";
        case ChannelFamily::Rtn: return "rtn";
        case ChannelFamily::Ad: return "ad";
    }
    return "?";
}

inline ChannelFamily parse_channel_family(const std::string& s) {
    if (s == "none") return ChannelFamily::None;
    if (s == "rtn") return ChannelFamily::Rtn;
    if (s == "ad") return ChannelFamily::Ad;
    throw ValidationError("unknown channel '" + s + "' (expected rtn, ad or none)");
}

/// Channel family with its two rates. `second` is b for RTN and g for AD.
struct ChannelSpec {
    ChannelFamily family = ChannelFamily::None;
    double gamma = 0;
    double second = 0;

    static ChannelSpec rtn(double gamma, double b) { return {ChannelFamily::Rtn, gamma, b}; }
    static ChannelSpec ad(double gamma, double g) { return {ChannelFamily::Ad, gamma, g}; }
    static ChannelSpec none() { return {}; }

    RtnParams rtn_params() const { return {gamma, second}; }
    AdParams ad_params() const { return {gamma, second}; }
};

/// Regime label; "none" when there is no channel.
inline std::string regime_label(const ChannelSpec& c) {
    switch (c.family) {
        case ChannelFamily::Rtn: return to_string(classify_rtn(c.rtn_params()));
        case ChannelFamily::Ad: return to_string(classify_ad(c.ad_params()));
        case ChannelFamily::None: return "none";
    }
    return "none";
}

/// Kraus set of the channel for the system at time t; two-qubit systems get
/// the local lift of the qubit channel.
inline KrausSet kraus_for(System sys, const ChannelSpec& c, double t) {
    const int d = dimension_of(sys);
    if (c.family == ChannelFamily::None) return KrausSet{d, {identity(d)}, t};
    const int local = sys == System::TwoQubit ? 2 : d;
    KrausSet ks = c.family == ChannelFamily::Rtn ? kraus_rtn(local, t, c.rtn_params()) : kraus_ad(local, t, c.ad_params());
    return sys == System::TwoQubit ? lift_two_qubit(ks) : ks;
}

inline Matrix evolve(const Matrix& rho0, System sys, const ChannelSpec& c, double t) {
    return apply_channel(rho0, kraus_for(sys, c, t));
}

}  // namespace dwf
