#pragma once

// Quantum nets, phase-point operators and the discrete Wigner function,
// together with the negativity-based quantities derived from it.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "dwf/linalg.hpp"
#include "dwf/mub.hpp"
#include "dwf/phase_space.hpp"

namespace dwf {

/// Striation -> basis bijection plus, for every striation, a line -> vector
/// bijection (indices into the basis assigned to that striation).
struct NetAssignment {
    std::vector<int> striation_to_basis;
    std::vector<std::vector<int>> line_to_vector;

    static NetAssignment identity(int d) {
        NetAssignment a;
        a.striation_to_basis.resize(d + 1);
        std::iota(a.striation_to_basis.begin(), a.striation_to_basis.end(), 0);
        std::vector<int> id(d);
        std::iota(id.begin(), id.end(), 0);
        a.line_to_vector.assign(d + 1, id);
        return a;
    }

    bool operator==(const NetAssignment&) const = default;
};

namespace detail {

inline bool is_permutation_of_range(const std::vector<int>& v, int n) {
    if (int(v.size()) != n) return false;
    std::vector<bool> seen(n, false);
    for (int x : v) {
        if (x < 0 || x >= n || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

}  // namespace detail

class QuantumNet {
public:
    static QuantumNet build(PhaseSpace space, MubSet mubs, NetAssignment assignment) {
        const int d = space.dimension();
        if (mubs.dimension != d) {
            throw ValidationError("quantum net: phase space has d=" + std::to_string(d) + " but MUB set has d=" +
                                  std::to_string(mubs.dimension));
        }
        if (!detail::is_permutation_of_range(assignment.striation_to_basis, d + 1)) {
            throw ValidationError("quantum net: striation to basis map is not a bijection on " +
                                  std::to_string(d + 1) + " indices");
        }
        if (int(assignment.line_to_vector.size()) != d + 1) {
            throw ValidationError("quantum net: expected a line map for each of the " + std::to_string(d + 1) +
                                  " striations");
        }
        for (int s = 0; s <= d; ++s) {
            if (!detail::is_permutation_of_range(assignment.line_to_vector[s], d)) {
                throw ValidationError("quantum net: line to vector map of striation " + std::to_string(s) +
                                      " is not a bijection");
            }
        }
        QuantumNet net;
        net.space_ = std::move(space);
        net.mubs_ = std::move(mubs);
        net.assignment_ = std::move(assignment);
        return net;
    }

    /// Striation i on basis i, line j on vector j, over the canonical MUBs.
    static QuantumNet standard(int d) { return build(PhaseSpace(d), mub_set(d), NetAssignment::identity(d)); }

    int dimension() const { return space_.dimension(); }
    const PhaseSpace& space() const { return space_; }
    const MubSet& mubs() const { return mubs_; }
    const NetAssignment& assignment() const { return assignment_; }

    const Vector& line_vector(int s, int j) const {
        return mubs_.bases.at(assignment_.striation_to_basis.at(s)).at(assignment_.line_to_vector.at(s).at(j));
    }
    Matrix line_projector(int s, int j) const { return projector(line_vector(s, j)); }

private:
    QuantumNet() : space_(2) {}

    PhaseSpace space_;
    MubSet mubs_;
    NetAssignment assignment_;
};

/// The d² phase-point operators of a net, stored in DWF table order.
class PhasePointOperatorSet {
public:
    explicit PhasePointOperatorSet(QuantumNet net) : net_(std::move(net)) {
        const int d = net_.dimension();
        ops_.reserve(d * d);
        for (const PhasePoint& x : net_.space().points()) {
            Matrix a = -identity(d);
            for (int s = 0; s <= d; ++s) a += net_.line_projector(s, net_.space().line_through(s, x));
            ops_.push_back(a);
        }
    }

    static PhasePointOperatorSet standard(int d) { return PhasePointOperatorSet(QuantumNet::standard(d)); }

    int dimension() const { return net_.dimension(); }
    const QuantumNet& net() const { return net_; }
    const Matrix& at(const PhasePoint& x) const { return ops_.at(x.p * dimension() + x.q); }
    const Matrix& at_index(int k) const { return ops_.at(k); }
    int size() const { return int(ops_.size()); }

private:
    QuantumNet net_;
    std::vector<Matrix> ops_;
};

inline PhasePointOperatorSet phase_point_operators(const QuantumNet& net) { return PhasePointOperatorSet(net); }

/// Real d×d quasi-probability table; row index is p, column index is q.
struct DwfTable {
    int dimension = 0;
    RealMatrix entries;

    static DwfTable zeros(int d) { return {d, RealMatrix::Zero(d, d)}; }

    double at(const PhasePoint& x) const { return entries(x.p, x.q); }
    double& at(const PhasePoint& x) { return entries(x.p, x.q); }
    /// 1-based W_{i,j}: row i, column j.
    double W(int i, int j) const { return entries(i - 1, j - 1); }
    double& W(int i, int j) { return entries(i - 1, j - 1); }
    double sum() const { return entries.sum(); }
    double min() const { return entries.minCoeff(); }

    std::vector<double> row_major() const {
        std::vector<double> out;
        for (int i = 0; i < dimension; ++i)
            for (int j = 0; j < dimension; ++j) out.push_back(entries(i, j));
        return out;
    }
};

inline void require_dimension(const Matrix& rho, int d, const char* who) {
    if (rho.rows() != d || rho.cols() != d) {
        throw ValidationError(std::string(who) + ": expected a " + std::to_string(d) + "x" + std::to_string(d) +
                              " matrix, got " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
    }
}

/// W_α = Tr(A_α ρ)/d. Linear, so it also accepts non-positive Hermitian input.
inline DwfTable compute_dwf(const Matrix& rho, const PhasePointOperatorSet& ops) {
    const int d = ops.dimension();
    require_dimension(rho, d, "compute_dwf");
    DwfTable t = DwfTable::zeros(d);
    for (const PhasePoint& x : ops.net().space().points()) t.at(x) = trace_product(ops.at(x), rho) / d;
    return t;
}

/// ρ = Σ_α W_α A_α.
inline Matrix reconstruct(const DwfTable& table, const PhasePointOperatorSet& ops) {
    const int d = ops.dimension();
    if (table.dimension != d) throw ValidationError("reconstruct: table and operator set dimensions differ");
    Matrix rho = Matrix::Zero(d, d);
    for (const PhasePoint& x : ops.net().space().points()) rho += table.at(x) * ops.at(x);
    return rho;
}

struct LineSumReport {
    double max_deviation = 0;
    int lines = 0;
    bool passed(double tol = 1e-10) const { return max_deviation <= tol; }
};

/// Compares Σ_{α∈λ} W_α with Tr(P_λ ρ) on every line of the net.
inline LineSumReport line_sum_check(const DwfTable& table, const PhasePointOperatorSet& ops, const Matrix& rho) {
    LineSumReport r;
    const QuantumNet& net = ops.net();
    const int d = net.dimension();
    for (int s = 0; s <= d; ++s)
        for (int j = 0; j < d; ++j) {
            double sum = 0;
            for (const PhasePoint& x : net.space().striations()[s].lines[j].points) sum += table.at(x);
            const double prob = trace_product(net.line_projector(s, j), rho);
            r.max_deviation = std::max(r.max_deviation, std::abs(sum - prob));
            ++r.lines;
        }
    return r;
}

struct OperatorReport {
    int dimension = 0;
    double max_hermitian_deviation = 0;
    double max_trace_deviation = 0;
    double max_orthogonality_deviation = 0;  // |Tr(A_α A_β) - d δ|
    double max_line_sum_deviation = 0;       // ‖(1/d) Σ_{α∈λ} A_α - P_λ‖
    bool passed() const {
        return max_hermitian_deviation <= 1e-12 && max_trace_deviation <= 1e-12 &&
               max_orthogonality_deviation <= 1e-10 && max_line_sum_deviation <= 1e-12;
    }
};

inline OperatorReport check_operators(const PhasePointOperatorSet& ops) {
    OperatorReport r;
    const int d = ops.dimension();
    r.dimension = d;
    for (int k = 0; k < ops.size(); ++k) {
        const Matrix& a = ops.at_index(k);
        r.max_hermitian_deviation = std::max(r.max_hermitian_deviation, max_abs(a - a.adjoint()));
        r.max_trace_deviation = std::max(r.max_trace_deviation, std::abs(a.trace() - 1.0));
        for (int l = 0; l < ops.size(); ++l) {
            const double target = (k == l) ? d : 0.0;
            r.max_orthogonality_deviation =
                std::max(r.max_orthogonality_deviation, std::abs((a * ops.at_index(l)).trace() - target));
        }
    }
    const QuantumNet& net = ops.net();
    for (int s = 0; s <= d; ++s)
        for (int j = 0; j < d; ++j) {
            Matrix sum = Matrix::Zero(d, d);
            for (const PhasePoint& x : net.space().striations()[s].lines[j].points) sum += ops.at(x);
            r.max_line_sum_deviation = std::max(r.max_line_sum_deviation, max_abs(sum / double(d) - net.line_projector(s, j)));
        }
    return r;
}

/// |min_α Tr(A_α ρ)| when that minimum is negative, otherwise 0. Note this
/// is evaluated on d·W_α rather than on W_α.
inline double negativity(const Matrix& rho, const PhasePointOperatorSet& ops) {
    require_dimension(rho, ops.dimension(), "negativity");
    double lo = 0;
    for (int k = 0; k < ops.size(); ++k) lo = std::min(lo, trace_product(ops.at_index(k), rho));
    return -lo;
}

/// Depolarising robustness 1 - 1/(D² N + 1); defined for prime D only.
inline double robustness(double neg, int D) {
    if (D != 2 && D != 3) {
        throw ValidationError("robustness is defined for prime dimensions 2 and 3 only, got " + std::to_string(D));
    }
    if (neg < 0) throw ValidationError("robustness: negativity must be non-negative");
    return 1.0 - 1.0 / (D * D * neg + 1.0);
}

inline double sum_negativity(const DwfTable& table) {
    double s = 0;
    for (int i = 0; i < table.dimension; ++i)
        for (int j = 0; j < table.dimension; ++j)
            if (table.entries(i, j) < 0) s -= table.entries(i, j);
    return s;
}

/// Natural-log mana, log(2 Sn + 1). For a normalised table this equals
/// log Σ|W_α|, and it is exactly 0 when no entry is negative.
inline double mana(const DwfTable& table) { return std::log1p(2 * sum_negativity(table)); }

struct NegativeStateResult {
    int rank = 0;  // 1-based
    PhasePoint point;
    double eigenvalue = 0;
    Vector vector;
    Matrix state;
    double negativity = 0;
    bool degenerate = false;  // the eigenvalue is degenerate in A_α
};

/// All negative states of an operator set, ranked.
///
/// Candidates are the eigenvectors of phase-point operators. Every distinct
/// eigenvalue level found anywhere in the set is represented once, by the
/// first point in table order whose operator attains it; each eigenvector of
/// that operator at that level is a candidate. Candidates are ordered by
/// eigenvalue and kept when their pure state has nonzero Wigner negativity.
inline std::vector<NegativeStateResult> negative_states(const PhasePointOperatorSet& ops, double level_tol = 1e-9) {
    struct Level {
        double value;
        PhasePoint point;
        Spectrum spectrum;
        std::vector<int> columns;
    };
    std::vector<Level> levels;
    for (const PhasePoint& x : ops.net().space().points()) {
        Spectrum sp = hermitian_eigen(ops.at(x));
        for (int k = 0; k < int(sp.values.size()); ++k) {
            const double e = sp.values[k];
            auto hit = std::find_if(levels.begin(), levels.end(),
                                    [&](const Level& l) { return std::abs(l.value - e) < level_tol; });
            if (hit == levels.end()) {
                levels.push_back({e, x, sp, {k}});
            } else if (hit->point == x) {
                hit->columns.push_back(k);
            }
        }
    }
    std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.value < b.value; });

    std::vector<NegativeStateResult> out;
    for (const Level& l : levels) {
        for (int k : l.columns) {
            NegativeStateResult r;
            r.point = l.point;
            r.eigenvalue = l.spectrum.values[k];
            r.vector = l.spectrum.vectors.col(k);
            r.state = projector(r.vector);
            r.negativity = negativity(r.state, ops);
            r.degenerate = l.columns.size() > 1;
            if (r.negativity <= 1e-10) continue;
            r.rank = int(out.size()) + 1;
            out.push_back(std::move(r));
        }
    }
    return out;
}

inline NegativeStateResult negative_state(const PhasePointOperatorSet& ops, int rank) {
    if (rank < 1) throw ValidationError("negative state rank must be >= 1");
    auto all = negative_states(ops);
    if (rank > int(all.size())) {
        throw ValidationError("negative state rank " + std::to_string(rank) + " unavailable: d=" +
                              std::to_string(ops.dimension()) + " has " + std::to_string(all.size()) +
                              " negative state" + (all.size() == 1 ? "" : "s"));
    }
    return all[rank - 1];
}

inline Matrix apply_unitary(const Matrix& rho, const Matrix& u) {
    if (!is_unitary(u, 1e-12)) throw ValidationError("apply_unitary: matrix is not unitary");
    require_dimension(rho, int(u.rows()), "apply_unitary");
    return u * rho * u.adjoint();
}

/// Entrywise test of a == conj(b).
inline bool is_conjugate(const Matrix& a, const Matrix& b, double tol = 1e-10) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs(a - b.conjugate()) <= tol;
}

struct PhaseGateProbe {
    int k1 = 0, k2 = 0;  // gate diag(1, ω^k1, ω^k2)
    std::vector<bool> conjugates;  // one flag per probed state
};

/// Tries every diagonal gate diag(1, ω^a, ω^b) on the given qutrit states and
/// records which of them map each state to its complex conjugate.
inline std::vector<PhaseGateProbe> probe_qutrit_phase_gates(const std::vector<Matrix>& states) {
    const Complex w = std::polar(1.0, 2 * kPi / 3);
    std::vector<PhaseGateProbe> out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Matrix u = Matrix::Zero(3, 3);
            u(0, 0) = 1;
            u(1, 1) = std::pow(w, a);
            u(2, 2) = std::pow(w, b);
            PhaseGateProbe p{a, b, {}};
            for (const Matrix& rho : states) p.conjugates.push_back(is_conjugate(apply_unitary(rho, u), rho));
            out.push_back(p);
        }
    return out;
}

}  // namespace dwf
