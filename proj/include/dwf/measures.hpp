#pragma once

// Coherence, entanglement and teleportation measures.

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "dwf/linalg.hpp"
#include "dwf/states.hpp"
#include "dwf/wigner.hpp"

namespace dwf {

using Matrix3 = Eigen::Matrix3d;

/// Σ_{i≠j} |ρ_ij| in the computational basis.
inline double coherence_l1(const Matrix& rho) {
    double s = 0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
            if (i != j) s += std::abs(rho(i, j));
    return s;
}

/// (σy ⊗ σy) ρ* (σy ⊗ σy).
inline Matrix spin_flip(const Matrix& rho) {
    require_dimension(rho, 4, "spin_flip");
    const Matrix yy = pauli2(2, 2);
    return yy * rho.conjugate() * yy;
}

/// Wootters concurrence from the spectrum of ρρ̃, whose square roots are
/// the λ_i of the nested-root definition.
inline double concurrence(const Matrix& rho) {
    require_dimension(rho, 4, "concurrence");
    Eigen::ComplexEigenSolver<Matrix> solver(rho * spin_flip(rho), false);
    std::array<double, 4> lam{};
    for (int k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(0.0, solver.eigenvalues()(k).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

/// t_ij = Tr(ρ σ_i ⊗ σ_j).
inline Matrix3 correlation_direct(const Matrix& rho) {
    require_dimension(rho, 4, "correlation_direct");
    Matrix3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = trace_product(rho, pauli2(i + 1, j + 1));
    return t;
}

namespace detail {

// DWF entries (row, column, 1-based) summed by each printed t_ij formula,
// t_ij = 1 − 2 Σ W over the listed cells.
inline constexpr int kPrintedCorrelationCells[3][3][8][2] = {
    {{{1, 1}, {1, 2}, {1, 3}, {1, 4}, {4, 1}, {4, 2}, {4, 3}, {4, 4}},
     {{1, 2}, {1, 4}, {2, 1}, {2, 3}, {3, 1}, {3, 3}, {4, 2}, {4, 4}},
     {{1, 2}, {1, 4}, {2, 2}, {2, 4}, {3, 1}, {3, 3}, {4, 1}, {4, 3}}},
    {{{1, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 4}, {4, 1}, {4, 2}},
     {{1, 2}, {1, 3}, {2, 1}, {2, 4}, {3, 1}, {3, 4}, {4, 2}, {4, 3}},
     {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 1}, {4, 4}}},
    {{{1, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {4, 3}, {4, 4}},
     {{1, 2}, {1, 3}, {2, 1}, {2, 4}, {3, 2}, {3, 3}, {4, 1}, {4, 4}},
     {{1, 1}, {1, 4}, {2, 1}, {2, 4}, {3, 1}, {3, 4}, {4, 1}, {4, 4}}},
};

}  // namespace detail

/// The nine printed linear combinations of DWF entries.
inline Matrix3 correlation_printed(const DwfTable& table) {
    if (table.dimension != 4) throw ValidationError("correlation_printed: expects a 4x4 DWF table");
    Matrix3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (const auto& cell : detail::kPrintedCorrelationCells[i][j]) s += table.W(cell[0], cell[1]);
            t(i, j) = 1 - 2 * s;
        }
    return t;
}

struct CorrelationFromDwf {
    Matrix3 primary;    // reconstruct ρ, then trace against σ_i ⊗ σ_j
    Matrix3 printed;    // the printed linear combinations
    Matrix3 deviation;  // printed − primary
};

inline CorrelationFromDwf correlation_from_dwf(const DwfTable& table, const PhasePointOperatorSet& ops) {
    CorrelationFromDwf r;
    r.primary = correlation_direct(reconstruct(table, ops));
    r.printed = correlation_printed(table);
    r.deviation = r.printed - r.primary;
    return r;
}

struct TeleportationResult {
    double n_f = 0;  // trace norm of T
    double fidelity = 0;
    bool beats_classical = false;  // F > 2/3
};

inline TeleportationResult teleportation_fidelity_from_correlation(const Matrix3& t) {
    Eigen::JacobiSVD<Matrix3> svd(t);
    TeleportationResult r;
    r.n_f = svd.singularValues().sum();
    r.fidelity = 0.5 * (1 + r.n_f / 3);
    r.beats_classical = r.fidelity > 2.0 / 3.0;
    return r;
}

inline TeleportationResult teleportation_fidelity(const Matrix& rho) {
    return teleportation_fidelity_from_correlation(correlation_direct(rho));
}

}  // namespace dwf
