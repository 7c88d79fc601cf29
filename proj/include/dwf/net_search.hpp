#pragma once

// Search for the quantum net under which a closed-form DWF coincides with
// the constructed one.
//
// A closed form that is affine in ρ is W_α(ρ) = Tr(T_α ρ)/d for unique
// Hermitian T_α, so matching reduces to comparing T_α with A_α for every
// net. The traceless projector spaces of distinct MUBs are orthogonal under
// the Frobenius product, which makes the squared residual a sum of
// independent (striation, basis, line permutation) costs plus a constant.
// The search minimises each cost over the d! permutations and then solves
// the (d+1)! striation-to-basis assignment, instead of enumerating all
// (d+1)!·(d!)^(d+1) nets.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "dwf/closed_forms.hpp"
#include "dwf/wigner.hpp"

namespace dwf {

/// Orthonormal (Tr(E_k E_l) = δ) basis of traceless Hermitian d×d matrices.
inline std::vector<Matrix> traceless_hermitian_basis(int d) {
    std::vector<Matrix> out;
    const double r = 1 / std::sqrt(2.0);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            Matrix sym = Matrix::Zero(d, d), asym = Matrix::Zero(d, d);
            sym(j, k) = sym(k, j) = r;
            asym(j, k) = Complex(0, -r);
            asym(k, j) = Complex(0, r);
            out.push_back(sym);
            out.push_back(asym);
        }
    for (int l = 1; l < d; ++l) {
        Matrix m = Matrix::Zero(d, d);
        const double norm = 1 / std::sqrt(double(l) * (l + 1));
        for (int k = 0; k < l; ++k) m(k, k) = norm;
        m(l, l) = -l * norm;
        out.push_back(m);
    }
    return out;
}

/// The operators T_α (table order) with W_α(ρ) = Tr(T_α ρ)/d, recovered
/// from d² evaluations of the closed form.
inline std::vector<Matrix> closed_form_targets(const ClosedForm& f, int d) {
    const Matrix centre = identity(d) / double(d);
    const DwfTable f0 = f(centre);
    std::vector<Matrix> targets(d * d, Matrix::Zero(d, d));
    for (int k = 0; k < d * d; ++k) targets[k] = d * f0.entries(k / d, k % d) * identity(d);
    for (const Matrix& e : traceless_hermitian_basis(d)) {
        const DwfTable fe = f(centre + e);
        for (int k = 0; k < d * d; ++k) {
            targets[k] += d * (fe.entries(k / d, k % d) - f0.entries(k / d, k % d)) * e;
        }
    }
    return targets;
}

/// sqrt(Σ_α ‖A_α − T_α‖²_F).
inline double net_residual(const PhasePointOperatorSet& ops, const std::vector<Matrix>& targets) {
    double s = 0;
    for (int k = 0; k < ops.size(); ++k) s += (ops.at_index(k) - targets.at(k)).squaredNorm();
    return std::sqrt(s);
}

struct NetSearchResult {
    int dimension = 0;
    bool matched = false;
    double residual = 0;           // best net, computed directly from its operators
    double predicted_residual = 0; // the same quantity from the factorised costs
    double default_residual = 0;   // standard (identity) net
    NetAssignment assignment;      // best net found
    long long cost_evaluations = 0;
};

inline NetSearchResult find_matching_net(const ClosedForm& f, const PhaseSpace& space, const MubSet& mubs,
                                         double tol = 1e-9) {
    const int d = space.dimension();
    if (mubs.dimension != d) throw ValidationError("find_matching_net: dimension mismatch");
    const std::vector<Matrix> targets = closed_form_targets(f, d);
    const auto points = space.points();
    const Matrix centre = identity(d) / double(d);

    // Centred projectors C_bj = P_bj - I/d and traceless targets.
    std::vector<std::vector<Matrix>> centred(d + 1);
    for (int b = 0; b <= d; ++b)
        for (int j = 0; j < d; ++j) centred[b].push_back(mubs.projector(b, j) - centre);
    std::vector<Matrix> traceless;
    double constant = 0;
    for (const Matrix& t : targets) {
        const double tr = t.trace().real();
        traceless.push_back(t - tr / d * identity(d));
        constant += std::pow(1 - tr, 2) / d;
    }

    // proj[b][k]: component of traceless target k inside basis b's space.
    std::vector<std::vector<Matrix>> proj(d + 1, std::vector<Matrix>(d * d));
    for (int b = 0; b <= d; ++b)
        for (int k = 0; k < d * d; ++k) {
            Matrix m = Matrix::Zero(d, d);
            for (int j = 0; j < d; ++j) m += trace_product(mubs.projector(b, j), traceless[k]) * centred[b][j];
            proj[b][k] = m;
        }
    for (int k = 0; k < d * d; ++k) {
        Matrix rest = traceless[k];
        for (int b = 0; b <= d; ++b) rest -= proj[b][k];
        constant += rest.squaredNorm();
    }

    NetSearchResult r;
    r.dimension = d;
    std::vector<std::vector<double>> cost(d + 1, std::vector<double>(d + 1));
    std::vector<std::vector<std::vector<int>>> best_perm(d + 1, std::vector<std::vector<int>>(d + 1));
    for (int s = 0; s <= d; ++s) {
        std::vector<int> line_of(d * d);
        for (int k = 0; k < d * d; ++k) line_of[k] = space.line_through(s, points[k]);
        for (int b = 0; b <= d; ++b) {
            std::vector<int> perm(d);
            std::iota(perm.begin(), perm.end(), 0);
            double best = std::numeric_limits<double>::infinity();
            do {
                double c = 0;
                for (int k = 0; k < d * d; ++k) c += (proj[b][k] - centred[b][perm[line_of[k]]]).squaredNorm();
                ++r.cost_evaluations;
                if (c < best - 1e-15) {
                    best = c;
                    best_perm[s][b] = perm;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            cost[s][b] = best;
        }
    }

    std::vector<int> sigma(d + 1);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<int> best_sigma = sigma;
    double best_total = std::numeric_limits<double>::infinity();
    do {
        double total = 0;
        for (int s = 0; s <= d; ++s) total += cost[s][sigma[s]];
        if (total < best_total - 1e-15) {
            best_total = total;
            best_sigma = sigma;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    r.assignment.striation_to_basis = best_sigma;
    for (int s = 0; s <= d; ++s) r.assignment.line_to_vector.push_back(best_perm[s][best_sigma[s]]);
    r.predicted_residual = std::sqrt(std::max(0.0, best_total + constant));
    const PhasePointOperatorSet best_ops(QuantumNet::build(space, mubs, r.assignment));
    r.residual = net_residual(best_ops, targets);
    r.default_residual =
        net_residual(PhasePointOperatorSet(QuantumNet::build(space, mubs, NetAssignment::identity(d))), targets);
    r.matched = r.residual < tol;
    return r;
}

/// Bloch parameters on which the closed form does not depend at all.
inline std::vector<std::string> insensitive_parameters(const ClosedForm& f, System sys) {
    const auto names = parameter_names(sys);
    const std::vector<double> zero(names.size(), 0.0);
    const DwfTable base = f(matrix_from_parameters(sys, zero));
    std::vector<std::string> out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        std::vector<double> v = zero;
        v[k] = 1;
        const DwfTable moved = f(matrix_from_parameters(sys, v));
        if ((moved.entries - base.entries).cwiseAbs().maxCoeff() < 1e-14) out.push_back(names[k]);
    }
    return out;
}

}  // namespace dwf
