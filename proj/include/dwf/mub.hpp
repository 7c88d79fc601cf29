#pragma once

// Complete sets of mutually unbiased bases for d = 2, 3, 4 in the printed
// table order, with an unbiasedness checker.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dwf/linalg.hpp"

namespace dwf {

using Basis = std::vector<Vector>;

/// Records a tabulated vector that was replaced because it breaks
/// orthonormality within its basis.
struct MubSubstitution {
    int basis = 0;   // 0-based
    int vector = 0;  // 0-based
    Vector printed;
    Vector replacement;
    double printed_max_overlap = 0;  // worst |<v|w>|^2 against its own basis
};

struct MubSet {
    int dimension = 0;
    std::vector<Basis> bases;  // d+1 bases of d vectors
    std::vector<MubSubstitution> substitutions;

    Matrix projector(int basis, int vector) const { return dwf::projector(bases.at(basis).at(vector)); }
};

namespace detail {

inline Vector vec(std::initializer_list<Complex> xs, double scale) {
    Vector v(Eigen::Index(xs.size()));
    Eigen::Index k = 0;
    for (Complex x : xs) v(k++) = x * scale;
    return v;
}

}  // namespace detail

/// The tables exactly as printed, including the defective d = 4 entry.
inline MubSet mub_set_printed(int d) {
    const Complex i(0, 1);
    MubSet m;
    m.dimension = d;
    if (d == 2) {
        const double r = 1 / std::sqrt(2.0);
        m.bases = {{detail::vec({0, 1}, 1), detail::vec({1, 0}, 1)},
                   {detail::vec({1, 1}, r), detail::vec({1, -1}, r)},
                   {detail::vec({1, i}, r), detail::vec({1, -i}, r)}};
    } else if (d == 3) {
        const Complex w = std::polar(1.0, 2 * kPi / 3);
        const Complex w2 = w * w;
        const double r = 1 / std::sqrt(3.0);
        m.bases = {{detail::vec({1, 0, 0}, 1), detail::vec({0, 1, 0}, 1), detail::vec({0, 0, 1}, 1)},
                   {detail::vec({1, 1, 1}, r), detail::vec({1, w, w2}, r), detail::vec({1, w2, w}, r)},
                   {detail::vec({1, w2, w2}, r), detail::vec({1, 1, w}, r), detail::vec({1, w, 1}, r)},
                   {detail::vec({1, w, w}, r), detail::vec({1, w2, 1}, r), detail::vec({1, 1, w2}, r)}};
    } else if (d == 4) {
        m.bases = {
            {detail::vec({1, 0, 0, 0}, 1), detail::vec({0, 1, 0, 0}, 1), detail::vec({0, 0, 1, 0}, 1),
             detail::vec({0, 0, 0, 1}, 1)},
            {detail::vec({1, 1, 1, 1}, .5), detail::vec({1, -1, 1, -1}, .5), detail::vec({1, 1, -1, -1}, .5),
             detail::vec({1, -1, -1, 1}, .5)},
            {detail::vec({1, -i, i, 1}, .5), detail::vec({1, i, i, -1}, .5), detail::vec({1, -i, -i, -1}, .5),
             detail::vec({1, i, -i, 1}, .5)},
            {detail::vec({1, 1, i, -i}, .5), detail::vec({1, -1, i, i}, .5), detail::vec({1, 1, -i, i}, .5),
             detail::vec({1, -1, -i, -i}, .5)},
            {detail::vec({1, -i, 1, i}, .5), detail::vec({1, i, 1, -i}, .5), detail::vec({1, -i, -i, -i}, .5),
             detail::vec({1, i, -1, i}, .5)},
        };
    } else {
        throw ValidationError("no MUB table for dimension " + std::to_string(d) + " (expected 2, 3 or 4)");
    }
    return m;
}

/// Unit vector orthogonal to every vector of `basis` except `skip`, phase
/// fixed. Only meaningful when the other d-1 vectors are orthonormal.
inline Vector orthogonal_completion(const Basis& basis, int skip) {
    const int d = int(basis.front().size());
    Matrix rest = identity(d);
    for (int k = 0; k < int(basis.size()); ++k)
        if (k != skip) rest -= projector(basis[k]);
    Spectrum s = hermitian_eigen(rest);
    Vector v = s.vectors.col(d - 1);
    v.normalize();
    fix_phase(v);
    return v;
}

/// The canonical MUB sets. When a basis is not orthonormal but becomes so
/// after dropping exactly one vector, that vector is replaced by the
/// orthogonal completion of the others and the replacement is recorded in
/// `substitutions`.
inline MubSet mub_set(int d) {
    MubSet m = mub_set_printed(d);
    auto overlap = [](const Basis& basis, int j, int k) { return std::norm(basis[j].dot(basis[k])); };
    for (int b = 0; b < int(m.bases.size()); ++b) {
        auto& basis = m.bases[b];
        std::vector<int> culprits;
        for (int skip = 0; skip < d; ++skip) {
            bool rest_ok = true;
            for (int j = 0; j < d; ++j)
                for (int k = j + 1; k < d; ++k)
                    if (j != skip && k != skip && overlap(basis, j, k) > 1e-12) rest_ok = false;
            double worst = 0;
            for (int k = 0; k < d; ++k)
                if (k != skip) worst = std::max(worst, overlap(basis, skip, k));
            if (rest_ok && worst > 1e-12) culprits.push_back(skip);
        }
        if (culprits.size() != 1) continue;
        const int j = culprits.front();
        double worst = 0;
        for (int k = 0; k < d; ++k)
            if (k != j) worst = std::max(worst, overlap(basis, j, k));
        MubSubstitution sub{b, j, basis[j], orthogonal_completion(basis, j), worst};
        basis[j] = sub.replacement;
        m.substitutions.push_back(sub);
    }
    return m;
}

struct MubReport {
    int dimension = 0;
    double max_norm_deviation = 0;        // | |v|^2 - 1 |
    double max_orthogonality_deviation = 0;  // |<v|w>|^2 within a basis
    double max_unbiased_deviation = 0;    // | |<v|w>|^2 - 1/d | across bases
    double max_completeness_deviation = 0;  // ‖Σ projectors - I‖ per basis
    int cross_pairs = 0;
    std::vector<MubSubstitution> substitutions;
    std::vector<std::string> violations;

    bool passed(double tol = 1e-12) const {
        return max_norm_deviation <= tol && max_orthogonality_deviation <= tol && max_unbiased_deviation <= tol &&
               max_completeness_deviation <= tol;
    }
};

inline MubReport check_unbiased(const MubSet& m, double tol = 1e-12) {
    MubReport r;
    r.dimension = m.dimension;
    r.substitutions = m.substitutions;
    const int d = m.dimension;
    const int nb = int(m.bases.size());
    auto label = [](int b, int j) { return "basis " + std::to_string(b + 1) + " vector " + std::to_string(j + 1); };
    auto add = [&](const std::string& s) {
        if (r.violations.size() < 32) r.violations.push_back(s);
    };
    if (nb != d + 1) add("expected " + std::to_string(d + 1) + " bases, found " + std::to_string(nb));
    for (int b = 0; b < nb; ++b) {
        Matrix sum = Matrix::Zero(d, d);
        for (int j = 0; j < int(m.bases[b].size()); ++j) {
            const Vector& v = m.bases[b][j];
            sum += projector(v);
            const double dn = std::abs(v.squaredNorm() - 1);
            r.max_norm_deviation = std::max(r.max_norm_deviation, dn);
            if (dn > tol) add(label(b, j) + " is not normalised");
            for (int k = j + 1; k < int(m.bases[b].size()); ++k) {
                const double o = std::norm(v.dot(m.bases[b][k]));
                r.max_orthogonality_deviation = std::max(r.max_orthogonality_deviation, o);
                if (o > tol) add(label(b, j) + " overlaps " + label(b, k) + ": " + std::to_string(o));
            }
        }
        r.max_completeness_deviation = std::max(r.max_completeness_deviation, max_abs(sum - identity(d)));
    }
    for (int b = 0; b < nb; ++b)
        for (int c = b + 1; c < nb; ++c)
            for (int j = 0; j < int(m.bases[b].size()); ++j)
                for (int k = 0; k < int(m.bases[c].size()); ++k) {
                    ++r.cross_pairs;
                    const double o = std::norm(m.bases[b][j].dot(m.bases[c][k]));
                    const double dev = std::abs(o - 1.0 / d);
                    r.max_unbiased_deviation = std::max(r.max_unbiased_deviation, dev);
                    if (dev > tol) add(label(b, j) + " vs " + label(c, k) + ": overlap " + std::to_string(o));
                }
    return r;
}

}  // namespace dwf
