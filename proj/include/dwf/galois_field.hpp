#pragma once

#include <string>
#include <vector>

#include "dwf/error.hpp"

namespace dwf {

/// Finite field GF(p^n) for p^n in {2, 3, 4}, stored as full addition and
/// multiplication tables over element indices 0..d-1.
///
/// For d = 4 elements use the polynomial basis over GF(2) modulo x² + x + 1:
/// index bits (b1 b0) encode b0 + b1·ω, so 0, 1, ω, ω² map to 0, 1, 2, 3
/// and ω² = ω + 1.
class GaloisField {
public:
    static GaloisField build(int p, int n) {
        int d = 1;
        for (int k = 0; k < n; ++k) d *= p;
        if (n < 1 || !((p == 2 && n == 1) || (p == 3 && n == 1) || (p == 2 && n == 2))) {
            throw ValidationError("GF(" + std::to_string(p) + "^" + std::to_string(n) +
                                  ") unsupported: only dimensions 2, 3 and 4 are implemented");
        }
        GaloisField f;
        f.p_ = p;
        f.n_ = n;
        f.d_ = d;
        f.add_.resize(d * d);
        f.mul_.resize(d * d);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                if (n == 1) {
                    f.add_[a * d + b] = (a + b) % p;
                    f.mul_[a * d + b] = (a * b) % p;
                } else {
                    f.add_[a * d + b] = a ^ b;
                    f.mul_[a * d + b] = gf4_mul(a, b);
                }
            }
        }
        if (d == 4) {
            f.labels_ = {"0", "1", "w", "w^2"};
        } else {
            for (int a = 0; a < d; ++a) f.labels_.push_back(std::to_string(a));
        }
        return f;
    }

    /// Field of the given order d ∈ {2, 3, 4}.
    static GaloisField of_order(int d) {
        switch (d) {
            case 2: return build(2, 1);
            case 3: return build(3, 1);
            case 4: return build(2, 2);
            default: throw ValidationError("unsupported dimension " + std::to_string(d) + " (expected 2, 3 or 4)");
        }
    }

    int characteristic() const { return p_; }
    int degree() const { return n_; }
    int size() const { return d_; }

    int add(int a, int b) const { return add_[a * d_ + b]; }
    int mul(int a, int b) const { return mul_[a * d_ + b]; }

    int neg(int a) const {
        for (int b = 0; b < d_; ++b)
            if (add(a, b) == 0) return b;
        throw ValidationError("no additive inverse");
    }

    int inv(int a) const {
        for (int b = 1; b < d_; ++b)
            if (mul(a, b) == 1) return b;
        throw ValidationError("zero has no multiplicative inverse");
    }

    const std::string& label(int a) const { return labels_.at(a); }
    const std::vector<int>& add_table() const { return add_; }
    const std::vector<int>& mul_table() const { return mul_; }

private:
    static int gf4_mul(int a, int b) {
        int r = 0;
        for (int k = 0; k < 2; ++k)
            if ((b >> k) & 1) r ^= a << k;
        if (r & 4) r ^= 0b111;  // reduce x² -> x + 1
        return r;
    }

    int p_ = 0;
    int n_ = 0;
    int d_ = 0;
    std::vector<int> add_;
    std::vector<int> mul_;
    std::vector<std::string> labels_;
};

/// Exhaustive check of the field axioms; returns human-readable violations.
inline std::vector<std::string> field_axiom_violations(const GaloisField& f) {
    std::vector<std::string> bad;
    const int d = f.size();
    auto fail = [&](const std::string& what) {
        if (bad.size() < 32) bad.push_back(what);
    };
    for (int a = 0; a < d; ++a) {
        if (f.add(a, 0) != a) fail("additive identity fails at " + f.label(a));
        if (f.mul(a, 1) != a) fail("multiplicative identity fails at " + f.label(a));
        bool has_neg = false;
        bool has_inv = (a == 0);
        for (int b = 0; b < d; ++b) {
            if (f.add(a, b) < 0 || f.add(a, b) >= d || f.mul(a, b) < 0 || f.mul(a, b) >= d) fail("table not closed");
            if (f.add(a, b) != f.add(b, a)) fail("addition not commutative");
            if (f.mul(a, b) != f.mul(b, a)) fail("multiplication not commutative");
            if (f.add(a, b) == 0) has_neg = true;
            if (a != 0 && f.mul(a, b) == 1) has_inv = true;
            for (int c = 0; c < d; ++c) {
                if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) fail("addition not associative");
                if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) fail("multiplication not associative");
                if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) fail("distributivity fails");
            }
        }
        if (!has_neg) fail("missing additive inverse for " + f.label(a));
        if (!has_inv) fail("missing multiplicative inverse for " + f.label(a));
    }
    return bad;
}

}  // namespace dwf
