#pragma once

// Bloch parametrisations of qubit, qutrit and two-qubit density matrices,
// Bell states and the named presets used for figure reproduction.

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dwf/linalg.hpp"
#include "dwf/wigner.hpp"

namespace dwf {

enum class System { Qubit, Qutrit, TwoQubit };

inline int dimension_of(System s) {
    switch (s) {
        case System::Qubit: return 2;
        case System::Qutrit: return 3;
        case System::TwoQubit: return 4;
    }
    return 0;
}

inline const char* to_string(System s) {
    switch (s) {
        case System::Qubit: return "qubit";
        case System::Qutrit: return "qutrit";
        case System::TwoQubit: return "twoqubit";
    }
    return "?";
}

inline System parse_system(const std::string& name) {
    if (name == "qubit") return System::Qubit;
    if (name == "qutrit") return System::Qutrit;
    if (name == "twoqubit" || name == "two_qubit") return System::TwoQubit;
    throw ValidationError("unknown system '" + name + "' (expected qubit, qutrit or twoqubit)");
}

inline System system_of_dimension(int d) {
    switch (d) {
        case 2: return System::Qubit;
        case 3: return System::Qutrit;
        case 4: return System::TwoQubit;
        default: throw ValidationError("no system of dimension " + std::to_string(d));
    }
}

struct QubitBloch {
    std::array<double, 3> a{};
};

struct QutritBloch {
    std::array<double, 8> n{};
};

struct TwoQubitBloch {
    std::array<double, 3> a{};
    std::array<double, 3> s{};
    std::array<std::array<double, 3>, 3> t{};  // t[i][j] pairs σ_{i+1} ⊗ σ_{j+1}
};

using BlochParams = std::variant<QubitBloch, QutritBloch, TwoQubitBloch>;

/// Standard Gell-Mann matrices λ₁..λ₈ (k is 1-based).
inline Matrix gell_mann(int k) {
    const Complex i(0, 1);
    Matrix m = Matrix::Zero(3, 3);
    switch (k) {
        case 1: m(0, 1) = m(1, 0) = 1; break;
        case 2: m(0, 1) = -i; m(1, 0) = i; break;
        case 3: m(0, 0) = 1; m(1, 1) = -1; break;
        case 4: m(0, 2) = m(2, 0) = 1; break;
        case 5: m(0, 2) = -i; m(2, 0) = i; break;
        case 6: m(1, 2) = m(2, 1) = 1; break;
        case 7: m(1, 2) = -i; m(2, 1) = i; break;
        case 8:
            m(0, 0) = m(1, 1) = 1 / std::sqrt(3.0);
            m(2, 2) = -2 / std::sqrt(3.0);
            break;
        default: throw ValidationError("Gell-Mann index must be in [1,8]");
    }
    return m;
}

/// σ_i ⊗ σ_j with 0 meaning the identity.
inline Matrix pauli2(int i, int j) { return kron(pauli(i), pauli(j)); }

// The *_matrix builders are purely linear and never validate, so they also
// produce non-positive Hermitian matrices. The *_from_bloch constructors
// validate.

inline Matrix qubit_matrix(const QubitBloch& b) {
    Matrix rho = identity(2);
    for (int k = 0; k < 3; ++k) rho += b.a[k] * pauli(k + 1);
    return rho / 2.0;
}

inline Matrix qutrit_matrix(const QutritBloch& b) {
    Matrix rho = identity(3);
    for (int k = 0; k < 8; ++k) rho += std::sqrt(3.0) * b.n[k] * gell_mann(k + 1);
    return rho / 3.0;
}

inline Matrix two_qubit_matrix(const TwoQubitBloch& b) {
    Matrix rho = identity(4);
    for (int i = 0; i < 3; ++i) {
        rho += b.a[i] * pauli2(i + 1, 0);
        rho += b.s[i] * pauli2(0, i + 1);
        for (int j = 0; j < 3; ++j) rho += b.t[i][j] * pauli2(i + 1, j + 1);
    }
    return rho / 4.0;
}

inline Matrix qubit_from_bloch(const QubitBloch& b) {
    const double norm2 = b.a[0] * b.a[0] + b.a[1] * b.a[1] + b.a[2] * b.a[2];
    if (norm2 > 1 + 1e-9) {
        std::ostringstream msg;
        msg << "qubit Bloch vector has norm " << std::sqrt(norm2) << " > 1";
        throw ValidationError(msg.str());
    }
    return qubit_matrix(b);
}

inline Matrix qutrit_from_bloch(const QutritBloch& b, double psd_tol = 1e-9) {
    Matrix rho = qutrit_matrix(b);
    validate_density(rho, psd_tol, "qutrit Bloch vector");
    return rho;
}

inline Matrix two_qubit_from_bloch(const TwoQubitBloch& b, double psd_tol = 1e-9) {
    Matrix rho = two_qubit_matrix(b);
    validate_density(rho, psd_tol, "two-qubit Bloch parameters");
    return rho;
}

inline QubitBloch qubit_bloch(const Matrix& rho) {
    require_dimension(rho, 2, "qubit_bloch");
    QubitBloch b;
    for (int k = 0; k < 3; ++k) b.a[k] = trace_product(rho, pauli(k + 1));
    return b;
}

inline QutritBloch qutrit_bloch(const Matrix& rho) {
    require_dimension(rho, 3, "qutrit_bloch");
    QutritBloch b;
    for (int k = 0; k < 8; ++k) b.n[k] = std::sqrt(3.0) / 2 * trace_product(rho, gell_mann(k + 1));
    return b;
}

inline TwoQubitBloch two_qubit_bloch(const Matrix& rho) {
    require_dimension(rho, 4, "two_qubit_bloch");
    TwoQubitBloch b;
    for (int i = 0; i < 3; ++i) {
        b.a[i] = trace_product(rho, pauli2(i + 1, 0));
        b.s[i] = trace_product(rho, pauli2(0, i + 1));
        for (int j = 0; j < 3; ++j) b.t[i][j] = trace_product(rho, pauli2(i + 1, j + 1));
    }
    return b;
}

inline BlochParams bloch_from_density(const Matrix& rho) {
    switch (rho.rows()) {
        case 2: return qubit_bloch(rho);
        case 3: return qutrit_bloch(rho);
        case 4: return two_qubit_bloch(rho);
        default: throw ValidationError("bloch_from_density: unsupported dimension " + std::to_string(rho.rows()));
    }
}

/// Parameters in print order: a; n; or a, s, t11..t33.
inline std::vector<double> flatten(const BlochParams& p) {
    std::vector<double> out;
    if (auto* q = std::get_if<QubitBloch>(&p)) out.assign(q->a.begin(), q->a.end());
    if (auto* q = std::get_if<QutritBloch>(&p)) out.assign(q->n.begin(), q->n.end());
    if (auto* q = std::get_if<TwoQubitBloch>(&p)) {
        out.insert(out.end(), q->a.begin(), q->a.end());
        out.insert(out.end(), q->s.begin(), q->s.end());
        for (const auto& row : q->t) out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

/// Names matching `flatten`.
inline std::vector<std::string> parameter_names(System s) {
    std::vector<std::string> out;
    if (s == System::Qubit) out = {"a1", "a2", "a3"};
    if (s == System::Qutrit)
        for (int k = 1; k <= 8; ++k) out.push_back("n" + std::to_string(k));
    if (s == System::TwoQubit) {
        for (const char* v : {"a", "s"})
            for (int k = 1; k <= 3; ++k) out.push_back(v + std::to_string(k));
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) out.push_back("t" + std::to_string(i) + std::to_string(j));
    }
    return out;
}

/// Inverse of `flatten`; the parameter count must match the system.
inline Matrix matrix_from_parameters(System s, const std::vector<double>& v) {
    const std::size_t need = s == System::Qubit ? 3 : s == System::Qutrit ? 8 : 15;
    if (v.size() != need) {
        throw ValidationError(std::string(to_string(s)) + " needs " + std::to_string(need) +
                              " Bloch parameters, got " + std::to_string(v.size()));
    }
    if (s == System::Qubit) return qubit_matrix({{v[0], v[1], v[2]}});
    if (s == System::Qutrit) {
        QutritBloch b;
        std::copy(v.begin(), v.end(), b.n.begin());
        return qutrit_matrix(b);
    }
    TwoQubitBloch b;
    for (int i = 0; i < 3; ++i) {
        b.a[i] = v[i];
        b.s[i] = v[3 + i];
        for (int j = 0; j < 3; ++j) b.t[i][j] = v[6 + 3 * i + j];
    }
    return two_qubit_matrix(b);
}

/// Validating constructor from a flat parameter list.
inline Matrix state_from_parameters(System s, const std::vector<double>& v, double psd_tol = 1e-9) {
    if (s == System::Qubit) {
        if (v.size() != 3) return matrix_from_parameters(s, v);  // throws with the count message
        return qubit_from_bloch({{v[0], v[1], v[2]}});
    }
    Matrix rho = matrix_from_parameters(s, v);
    validate_density(rho, psd_tol, s == System::Qutrit ? "qutrit Bloch vector" : "two-qubit Bloch parameters");
    return rho;
}

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline BellLabel parse_bell_label(const std::string& s) {
    if (s == "phi_plus" || s == "phi+" || s == "Φ+") return BellLabel::PhiPlus;
    if (s == "phi_minus" || s == "phi-" || s == "Φ−" || s == "Φ-") return BellLabel::PhiMinus;
    if (s == "psi_plus" || s == "psi+" || s == "Ψ+") return BellLabel::PsiPlus;
    if (s == "psi_minus" || s == "psi-" || s == "Ψ−" || s == "Ψ-") return BellLabel::PsiMinus;
    throw ValidationError("unknown Bell label '" + s + "' (expected phi_plus, phi_minus, psi_plus or psi_minus)");
}

inline Matrix bell_state(BellLabel label) {
    Vector v = Vector::Zero(4);
    const double r = 1 / std::sqrt(2.0);
    switch (label) {
        case BellLabel::PhiPlus: v(0) = r; v(3) = r; break;
        case BellLabel::PhiMinus: v(0) = r; v(3) = -r; break;
        case BellLabel::PsiPlus: v(1) = r; v(2) = r; break;
        case BellLabel::PsiMinus: v(1) = r; v(2) = -r; break;
    }
    return projector(v);
}

inline Matrix bell_state(const std::string& label) { return bell_state(parse_bell_label(label)); }

/// A named state with a record of where it comes from and whether it had
/// to be adjusted to be a valid density matrix.
struct Preset {
    std::string name;
    System system = System::Qubit;
    Matrix state;
    std::string provenance;
    std::vector<double> parameters;  // as given, before any adjustment
    bool adjusted = false;
    double raw_min_eigenvalue = 0;
    double adjustment_distance = 0;  // trace distance from the raw matrix
};

namespace detail {

/// Rounded caption parameters: accepted as-is within -1e-6, otherwise
/// clipped onto the nearest state.
inline Preset caption_preset(std::string name, System sys, std::vector<double> params, std::string provenance) {
    Preset p;
    p.name = std::move(name);
    p.system = sys;
    p.parameters = std::move(params);
    p.provenance = std::move(provenance);
    const Matrix raw = matrix_from_parameters(sys, p.parameters);
    p.raw_min_eigenvalue = min_eigenvalue(raw);
    if (p.raw_min_eigenvalue < -1e-6) {
        p.state = clip_to_state(raw);
        p.adjusted = true;
        p.adjustment_distance = trace_distance(p.state, raw);
        std::ostringstream msg;
        msg << "; projected onto the nearest state by eigenvalue clipping (raw minimum eigenvalue "
            << p.raw_min_eigenvalue << ", trace distance " << p.adjustment_distance << ")";
        p.provenance += msg.str();
    } else {
        p.state = raw;
    }
    return p;
}

}  // namespace detail

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{
        "qubit_ns1",       "qutrit_ns1",       "twoqubit_ns1",     "qubit_ns1_exact",  "qutrit_ns1_exact",
        "qutrit_ns2_exact", "qutrit_ns3_exact", "twoqubit_ns1_exact", "twoqubit_ns2_exact", "twoqubit_ns3_exact",
        "bell_phi_plus",   "bell_phi_minus",   "bell_psi_plus",    "bell_psi_minus"};
    return names;
}

/// Exact negative state NS_k of the standard net for the system.
inline Preset exact_negative_state(System sys, int rank) {
    const auto r = negative_state(PhasePointOperatorSet::standard(dimension_of(sys)), rank);
    Preset p;
    p.system = sys;
    p.name = std::string(to_string(sys)) + "_ns" + std::to_string(rank) + "_exact";
    p.state = r.state;
    p.parameters = flatten(bloch_from_density(r.state));
    std::ostringstream msg;
    msg << "eigenvector of the phase-point operator at (q=" << r.point.q << ", p=" << r.point.p
        << ") for eigenvalue " << r.eigenvalue << " under the standard net";
    p.provenance = msg.str();
    return p;
}

inline Preset preset(const std::string& name) {
    if (name == "qubit_ns1") {
        return detail::caption_preset(name, System::Qubit, {0.50, 0.56, -0.66},
                                      "qubit NS1 figure-caption Bloch vector (two-decimal rounded)");
    }
    if (name == "qutrit_ns1") {
        return detail::caption_preset(name, System::Qutrit, {0, 0, -0.5, 0, 0, 0.4, 0.7, -0.3},
                                      "qutrit NS1 figure-caption Gell-Mann vector (two-decimal rounded, standard "
                                      "Gell-Mann ordering assumed)");
    }
    if (name == "twoqubit_ns1") {
        return detail::caption_preset(
            name, System::TwoQubit,
            {0.14, 0.14, 0.61, 0.44, -0.44, 0.14, 0.61, 0.14, -0.44, -0.14, -0.61, -0.44, 0.61, -0.61, 0.44},
            "two-qubit NS1 figure-caption parameters (two-decimal rounded)");
    }
    if (name.rfind("bell_", 0) == 0) {
        Preset p;
        p.name = name;
        p.system = System::TwoQubit;
        p.state = bell_state(name.substr(5));
        p.parameters = flatten(bloch_from_density(p.state));
        p.provenance = "maximally entangled Bell state";
        return p;
    }
    const std::string suffix = "_exact";
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
        const std::string stem = name.substr(0, name.size() - suffix.size());
        const auto cut = stem.rfind("_ns");
        if (cut != std::string::npos && cut + 3 < stem.size()) {
            const System sys = parse_system(stem.substr(0, cut));
            const int rank = std::stoi(stem.substr(cut + 3));
            return exact_negative_state(sys, rank);
        }
    }
    throw ValidationError("unknown preset '" + name + "'");
}

}  // namespace dwf
