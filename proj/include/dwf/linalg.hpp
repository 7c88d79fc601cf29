#pragma once

// Dense complex linear algebra for the small (d <= 4) matrices used across
// the library. Thin wrappers over Eigen plus a deterministic Hermitian
// eigendecomposition that canonicalises degenerate eigenspaces.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "dwf/error.hpp"

namespace dwf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

inline Matrix identity(int d) { return Matrix::Identity(d, d); }

inline Matrix projector(const Vector& v) { return v * v.adjoint(); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Re Tr(AB) without forming the product.
inline double trace_product(const Matrix& a, const Matrix& b) {
    return (a.transpose().cwiseProduct(b)).sum().real();
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

inline bool is_unitary(const Matrix& u, double tol = 1e-12) {
    return u.rows() == u.cols() && max_abs(u * u.adjoint() - identity(int(u.rows()))) <= tol;
}

/// Pauli matrices; index 0 is the identity, 1..3 are σx, σy, σz.
inline Matrix pauli(int k) {
    Matrix m(2, 2);
    const Complex i(0.0, 1.0);
    switch (k) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -i, i, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw ValidationError("pauli index must be in [0,3]");
    }
    return m;
}

/// Multiplies v by a global phase so its first component with modulus above
/// 1e-9 is real and positive.
inline void fix_phase(Vector& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-9) {
            v *= std::abs(v(k)) / v(k);
            return;
        }
    }
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues ascending.
struct Spectrum {
    std::vector<double> values;
    Matrix vectors;           // column k belongs to values[k]
    bool degenerate = false;  // some gap fell below the degeneracy threshold
};

/// Hermitian eigendecomposition with a canonical, solver-independent basis.
///
/// Eigenvalues closer than `degeneracy_gap` form one eigenspace. Inside such
/// a space the basis diagonalises the number operator diag(0, 1, ..., d-1)
/// compressed to the space, ordered by ascending expectation. Every
/// eigenvector has its phase fixed with fix_phase().
inline Spectrum hermitian_eigen(const Matrix& h, double degeneracy_gap = 1e-10) {
    if (h.rows() != h.cols()) throw ValidationError("hermitian_eigen: matrix is not square");
    const Eigen::Index n = h.rows();
    const Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) throw ValidationError("hermitian_eigen: solver failed");

    Spectrum out;
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    out.vectors = solver.eigenvectors();

    Matrix number = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) number(k, k) = double(k);

    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n && out.values[stop] - out.values[stop - 1] < degeneracy_gap) ++stop;
        const Eigen::Index m = stop - start;
        if (m > 1) {
            out.degenerate = true;
            const double mean = [&] {
                double s = 0;
                for (Eigen::Index k = start; k < stop; ++k) s += out.values[k];
                return s / double(m);
            }();
            const Matrix basis = out.vectors.middleCols(start, m);
            Eigen::SelfAdjointEigenSolver<Matrix> inner(basis.adjoint() * number * basis);
            out.vectors.middleCols(start, m) = basis * inner.eigenvectors();
            for (Eigen::Index k = start; k < stop; ++k) out.values[k] = mean;
        }
        start = stop;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        Vector v = out.vectors.col(k);
        fix_phase(v);
        out.vectors.col(k) = v;
    }
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

inline double min_eigenvalue(const Matrix& h) { return hermitian_eigenvalues(h).front(); }

/// ½‖a − b‖₁ for Hermitian a, b.
inline double trace_distance(const Matrix& a, const Matrix& b) {
    double s = 0;
    for (double e : hermitian_eigenvalues(a - b)) s += std::abs(e);
    return 0.5 * s;
}

inline double purity(const Matrix& rho) { return trace_product(rho, rho); }

/// Throws ValidationError unless rho is square, Hermitian, trace 1 and has
/// eigenvalues >= -psd_tol.
inline void validate_density(const Matrix& rho, double psd_tol = 1e-9, const char* who = "state") {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw ValidationError(std::string(who) + ": density matrix must be square and non-empty");
    }
    if (!is_hermitian(rho, 1e-9)) throw ValidationError(std::string(who) + ": density matrix is not Hermitian");
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << who << ": trace " << tr << " != 1";
        throw ValidationError(msg.str());
    }
    const double lo = min_eigenvalue(rho);
    if (lo < -psd_tol) {
        std::ostringstream msg;
        msg << who << ": not positive semidefinite (minimum eigenvalue " << lo << ")";
        throw ValidationError(msg.str());
    }
}

/// Nearest state by eigenvalue clipping: negative eigenvalues are set to 0
/// and the spectrum is renormalised to unit trace.
inline Matrix clip_to_state(const Matrix& h) {
    const Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    Eigen::VectorXd ev = solver.eigenvalues().cwiseMax(0.0);
    const double total = ev.sum();
    if (total <= 0) throw ValidationError("clip_to_state: spectrum has no positive part");
    ev /= total;
    return solver.eigenvectors() * ev.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace dwf
