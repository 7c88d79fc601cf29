#pragma once

// Published closed-form DWF expressions, kept verbatim as oracles. They are
// tied to one particular (unstated) quantum net and are compared against
// the constructed DWF, never used in place of it.

#include <array>
#include <cmath>
#include <functional>

#include "dwf/states.hpp"
#include "dwf/wigner.hpp"

namespace dwf {

/// Static qubit forms. They contain no a₁ term.
inline DwfTable closed_form_qubit_dwf(const QubitBloch& b) {
    const double a2 = b.a[1], a3 = b.a[2];
    DwfTable t = DwfTable::zeros(2);
    t.W(1, 1) = (1 - a2 + a3) / 4;
    t.W(1, 2) = (1 + a2 - a3) / 4;
    t.W(2, 1) = (1 + a2 + a3) / 4;
    t.W(2, 2) = (1 - a2 - a3) / 4;
    return t;
}

/// Qubit forms under RTN, written in terms of the memory kernel value Λ(t)
/// (the printed expressions expand Λ as e^{-γt}[cos ζγt + sin ζγt / ζ]).
inline DwfTable closed_form_qubit_rtn_dwf(const QubitBloch& b, double kernel) {
    const double a1 = b.a[0], a2 = b.a[1], a3 = b.a[2];
    DwfTable t = DwfTable::zeros(2);
    t.W(1, 1) = (1 + a3 - (a1 + a2) * kernel) / 4;
    t.W(1, 2) = (1 - a3 + (-a1 + a2) * kernel) / 4;
    t.W(2, 1) = (1 + a3 + (a1 + a2) * kernel) / 4;
    t.W(2, 2) = (1 - a3 + (a1 - a2) * kernel) / 4;
    return t;
}

inline DwfTable closed_form_qutrit_dwf(const QutritBloch& b) {
    const double s3 = std::sqrt(3.0);
    const auto& n = b.n;
    const double n1 = n[0], n2 = n[1], n3 = n[2], n4 = n[3], n5 = n[4], n6 = n[5], n7 = n[6], n8 = n[7];
    DwfTable t = DwfTable::zeros(3);
    t.W(1, 1) = (1 + s3 * n3 - s3 * n6 - 3 * n7 + n8) / 9;
    t.W(1, 2) = (1 - s3 * n1 - s3 * n3 - 3 * n2 + n8) / 9;
    t.W(1, 3) = (1 - s3 * n4 + 3 * n5 - 2 * n8) / 9;
    t.W(2, 1) = (1 + s3 * n3 - s3 * n6 + 3 * n7 + n8) / 9;
    t.W(2, 2) = (1 - s3 * n1 - s3 * n3 + 3 * n2 + n8) / 9;
    t.W(2, 3) = (1 - s3 * n4 - 3 * n5 - 2 * n8) / 9;
    t.W(3, 1) = (1 + s3 * n3 + 2 * s3 * n6 + n8) / 9;
    t.W(3, 2) = (1 + 2 * s3 * n1 - s3 * n3 + n8) / 9;
    t.W(3, 3) = (1 + 2 * s3 * n4 - 2 * n8) / 9;
    return t;
}

namespace detail {

// Sign of each parameter in W_{i,j}, in the order
// a1 a2 a3 s1 s2 s3 t11 t12 t13 t21 t22 t23 t31 t32 t33.
inline constexpr std::array<const char*, 16> kTwoQubitSigns{
    "--+-+++--+---++",  // W11
    "--+---++++++---",  // W12
    "-+--+++---+++--",  // W13
    "-+----+++---+++",  // W14
    "--++-+-+--+-+-+",  // W21
    "--+++---+--+++-",  // W22
    "-+-+-+-+-+-+-+-",  // W23
    "-+-++---+++---+",  // W24
    "+++-++-++-++-++",  // W31
    "+++------------",  // W32
    "+---++-+++--+--",  // W33
    "+--------++++++",  // W34
    "++++-++-++-++-+",  // W41
    "+++++-++-++-++-",  // W42
    "+--+-++-+-+--+-",  // W43
    "+--++-++---+--+",  // W44
};

}  // namespace detail

inline DwfTable closed_form_two_qubit_dwf(const TwoQubitBloch& b) {
    std::array<double, 15> x{};
    for (int k = 0; k < 3; ++k) {
        x[k] = b.a[k];
        x[3 + k] = b.s[k];
        for (int j = 0; j < 3; ++j) x[6 + 3 * k + j] = b.t[k][j];
    }
    DwfTable t = DwfTable::zeros(4);
    for (int r = 0; r < 16; ++r) {
        double w = 1;
        for (int k = 0; k < 15; ++k) w += (detail::kTwoQubitSigns[r][k] == '+' ? 1.0 : -1.0) * x[k];
        t.entries(r / 4, r % 4) = w / 16;
    }
    return t;
}

/// A closed form viewed as a function of the density matrix. The matrix is
/// mapped to its Bloch parameters first, so non-positive Hermitian input is
/// accepted and the map stays affine.
using ClosedForm = std::function<DwfTable(const Matrix&)>;

inline ClosedForm closed_form_for(int d) {
    switch (d) {
        case 2: return [](const Matrix& rho) { return closed_form_qubit_dwf(qubit_bloch(rho)); };
        case 3: return [](const Matrix& rho) { return closed_form_qutrit_dwf(qutrit_bloch(rho)); };
        case 4: return [](const Matrix& rho) { return closed_form_two_qubit_dwf(two_qubit_bloch(rho)); };
        default: throw ValidationError("no closed form for dimension " + std::to_string(d));
    }
}

}  // namespace dwf
