#pragma once

// Consolidated self-check: geometry, MUBs, phase-point operators, channels,
// kernels, negativity and the closed-form comparisons. Known discrepancies
// of the published expressions come back as WARN items with their numbers.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dwf/channels.hpp"
#include "dwf/closed_forms.hpp"
#include "dwf/measures.hpp"
#include "dwf/net_search.hpp"
#include "dwf/states.hpp"
#include "dwf/wigner.hpp"

namespace dwf {

enum class Status { Pass, Warn, Fail };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Warn: return "WARN";
        case Status::Fail: return "FAIL";
    }
    return "?";
}

struct CheckItem {
    std::string name;
    Status status = Status::Pass;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckItem> items;

    int count(Status s) const {
        int n = 0;
        for (const auto& i : items) n += i.status == s;
        return n;
    }
    bool ok() const { return count(Status::Fail) == 0; }
    const CheckItem* find(const std::string& name) const {
        for (const auto& i : items)
            if (i.name == name) return &i;
        return nullptr;
    }
};

struct VerifyOptions {
    std::map<int, MubSet> mub_override;  // replaces mub_set(d) for the given d
    int random_states = 100;
    unsigned seed = 20240601;
};

namespace detail {

inline std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

inline std::string sci(double x) { return fmt("%.3g", x); }

/// Mixed state from a complex Ginibre matrix, ρ = G G† / Tr.
inline Matrix random_density(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0, 1);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

/// First sign change of f on [lo, hi] located on a grid of step h and then
/// refined by bisection. Returns -1 when there is none.
inline double first_root(const std::function<double(double)>& f, double lo, double hi, double h) {
    double a = lo, fa = f(a);
    for (double b = lo + h; b <= hi; b += h) {
        const double fb = f(b);
        if ((fa < 0) != (fb < 0)) {
            double x0 = a, x1 = b;
            for (int k = 0; k < 200; ++k) {
                const double m = 0.5 * (x0 + x1);
                ((f(m) < 0) == (fa < 0) ? x0 : x1) = m;
            }
            return 0.5 * (x0 + x1);
        }
        a = b;
        fa = fb;
    }
    return -1;
}

}  // namespace detail

inline VerifyReport verify_all(const VerifyOptions& opt = {}) {
    VerifyReport rep;
    auto add = [&](std::string name, bool ok, std::string detail, Status soft = Status::Fail) {
        rep.items.push_back({std::move(name), ok ? Status::Pass : soft, std::move(detail)});
    };
    auto warn = [&](std::string name, std::string detail) {
        rep.items.push_back({std::move(name), Status::Warn, std::move(detail)});
    };
    std::mt19937_64 rng(opt.seed);
    const std::vector<int> dims{2, 3, 4};

    // geometry
    {
        std::string counts;
        bool all = true;
        for (int d : dims) {
            const PhaseSpace space(d);
            const auto g = verify_geometry(space.striations(), d);
            const bool ok = g.passed() && g.striation_count == d + 1 && g.line_count == d * (d + 1);
            all = all && ok;
            std::string detail = std::to_string(g.striation_count) + " striations, " + std::to_string(g.line_count) +
                                 " lines, axioms " + (g.passed() ? "hold" : "violated");
            for (const auto& v : g.violations) detail += "; " + v;
            add("geometry.d" + std::to_string(d), ok, detail);
            counts += (counts.empty() ? "" : "+") + std::to_string(g.striation_count);
        }
        add("geometry.striation_counts", all && counts == "3+4+5", counts + " striations validated");
    }

    // MUBs
    std::map<int, MubSet> mubs;
    for (int d : dims) {
        auto it = opt.mub_override.find(d);
        mubs.emplace(d, it != opt.mub_override.end() ? it->second : mub_set(d));
        const MubReport m = check_unbiased(mubs.at(d));
        std::string detail = std::to_string(m.cross_pairs) + " cross pairs, max |overlap - 1/d| " +
                             detail::sci(m.max_unbiased_deviation) + ", max in-basis overlap " +
                             detail::sci(m.max_orthogonality_deviation);
        for (std::size_t k = 0; k < m.violations.size() && k < 3; ++k) detail += "; " + m.violations[k];
        add("mub.d" + std::to_string(d), m.passed(1e-12), detail);
        for (const auto& s : m.substitutions) {
            char buf[256];
            std::snprintf(buf, sizeof buf,
                          "printed basis %d vector %d is not orthogonal to its basis (max |<v|w>|^2 = %.4f); "
                          "replaced by the orthogonal completion, max cross-basis deviation after replacement %.3g",
                          s.basis + 1, s.vector + 1, s.printed_max_overlap, m.max_unbiased_deviation);
            warn("mub.d" + std::to_string(d) + ".table_substitution", buf);
        }
    }

    // phase-point operators and round trips
    std::map<int, PhasePointOperatorSet> opsets;
    for (int d : dims) {
        const PhasePointOperatorSet ops(QuantumNet::build(PhaseSpace(d), mubs.at(d), NetAssignment::identity(d)));
        const OperatorReport o = check_operators(ops);
        add("operators.d" + std::to_string(d), o.passed(),
            "hermitian " + detail::sci(o.max_hermitian_deviation) + ", trace " + detail::sci(o.max_trace_deviation) +
                ", Tr(AA) " + detail::sci(o.max_orthogonality_deviation) + ", line sums " +
                detail::sci(o.max_line_sum_deviation));
        double round = 0, total = 0, lines = 0;
        for (int k = 0; k < opt.random_states; ++k) {
            const Matrix rho = detail::random_density(d, rng);
            const DwfTable w = compute_dwf(rho, ops);
            round = std::max(round, max_abs(reconstruct(w, ops) - rho));
            total = std::max(total, std::abs(w.sum() - 1));
            lines = std::max(lines, line_sum_check(w, ops, rho).max_deviation);
        }
        add("roundtrip.d" + std::to_string(d), round <= 1e-10 && total <= 1e-10 && lines <= 1e-10,
            std::to_string(opt.random_states) + " random states, max reconstruction error " + detail::sci(round) +
                ", normalisation " + detail::sci(total) + ", line sums " + detail::sci(lines));
        opsets.emplace(d, ops);
    }

    // channels
    {
        const std::vector<std::pair<std::string, ChannelSpec>> families{
            {"rtn_non_markovian", ChannelSpec::rtn(0.001, 0.05)},
            {"rtn_markovian", ChannelSpec::rtn(1, 0.07)},
            {"ad_non_markovian", ChannelSpec::ad(50, 0.01)},
            {"ad_markovian", ChannelSpec::ad(0.01, 1)}};
        for (const auto& [label, spec] : families)
            for (System sys : {System::Qubit, System::Qutrit, System::TwoQubit}) {
                const int d = dimension_of(sys);
                double complete = 0, id0 = 0, psd = 0, herm = 0, tr = 0;
                for (int k = 0; k < 50; ++k) {
                    const double t = 0.5 * k * k / 10.0;
                    complete = std::max(complete, kraus_for(sys, spec, t).completeness_deviation());
                }
                for (int k = 0; k < 20; ++k) {
                    const Matrix rho = detail::random_density(d, rng);
                    id0 = std::max(id0, max_abs(evolve(rho, sys, spec, 0) - rho));
                    const Matrix out = evolve(rho, sys, spec, 1.0 + 7.0 * k);
                    herm = std::max(herm, max_abs(out - out.adjoint()));
                    tr = std::max(tr, std::abs(out.trace().real() - 1));
                    psd = std::min(psd, min_eigenvalue(out));
                }
                add("channel." + label + "." + to_string(sys),
                    complete <= 1e-10 && id0 <= 1e-12 && herm <= 1e-12 && tr <= 1e-10 && psd >= -1e-10,
                    "completeness " + detail::sci(complete) + ", t=0 identity " + detail::sci(id0) +
                        ", min output eigenvalue " + detail::sci(psd));
            }
        double unital = 0;
        for (System sys : {System::Qubit, System::Qutrit, System::TwoQubit}) {
            const int d = dimension_of(sys);
            for (double t : {0.0, 3.0, 17.0, 120.0}) {
                const Matrix mixed = identity(d) / double(d);
                unital = std::max(unital, max_abs(evolve(mixed, sys, ChannelSpec::rtn(0.001, 0.05), t) - mixed));
            }
        }
        add("channel.rtn_unital", unital <= 1e-15, "max deviation on I/d " + detail::sci(unital));
    }

    // kernels
    {
        const RtnParams nm{0.001, 0.05};
        const AdParams nm_ad{50, 0.01};
        const double z = detail::first_root([&](double t) { return rtn_kernel(t, nm); }, 0, 100, 0.01);
        add("kernel.rtn_first_zero", std::abs(z - 15.81) <= 0.05, "Lambda first zero at t = " + detail::fmt("%.4f", z));
        const double one = detail::first_root([&](double t) { return ad_amplitude(t, nm_ad); }, 0, 10, 0.001);
        add("kernel.ad_first_full_decay", std::abs(one - 3.16) <= 0.02,
            "lambda first reaches 1 at t = " + detail::fmt("%.4f", one));
        bool mono = true;
        double prev = rtn_kernel(0, {1, 0.07});
        for (int k = 1; k <= 5000; ++k) {
            const double v = rtn_kernel(0.01 * k, {1, 0.07});
            mono = mono && v > 0 && v <= prev;
            prev = v;
        }
        add("kernel.rtn_markovian_monotone", mono && rtn_kernel(0, nm) == 1 && ad_decay(0, nm_ad) == 0,
            "Lambda(0)=1, lambda(0)=0, Markovian Lambda positive and non-increasing on [0,50]");
    }

    // negativity and mana
    {
        const auto& q = opsets.at(2);
        const auto ns = negative_states(q);
        const double neg = ns.empty() ? 0 : ns.front().negativity;
        add("negativity.qubit_ns1", std::abs(neg - (std::sqrt(3.0) - 1) / 2) <= 1e-10,
            "negativity " + detail::fmt("%.12f", neg) + ", robustness " + detail::fmt("%.5f", robustness(neg, 2)));
        double stab = 0;
        for (int d : dims) {
            const auto& m = mubs.at(d);
            for (const auto& basis : m.bases)
                for (const auto& v : basis) stab = std::max(stab, negativity(projector(v), opsets.at(d)));
        }
        add("negativity.stabilizer_states", stab <= 1e-10, "max negativity over MUB vectors " + detail::sci(stab));
        double mixed = 0;
        for (int d : dims) mixed = std::max(mixed, std::abs(mana(compute_dwf(identity(d) / double(d), opsets.at(d)))));
        add("mana.maximally_mixed", mixed <= 1e-15, "max |mana(I/d)| " + detail::sci(mixed));
    }

    // caption state adjustments
    for (const std::string name : {"qubit_ns1", "qutrit_ns1", "twoqubit_ns1"}) {
        const Preset p = preset(name);
        if (p.adjusted) {
            warn("preset." + name,
                 "caption parameters are not a valid state (min eigenvalue " + detail::fmt("%.4f", p.raw_min_eigenvalue) +
                     "); clipped onto the nearest state, trace distance " + detail::fmt("%.4f", p.adjustment_distance));
        } else {
            add("preset." + name, true, "caption parameters form a valid state (min eigenvalue " +
                                            detail::fmt("%.4g", p.raw_min_eigenvalue) + ")");
        }
    }

    // closed forms against the constructed DWF
    {
        const ClosedForm f = closed_form_for(2);
        const auto r = find_matching_net(f, PhaseSpace(2), mubs.at(2));
        const auto insensitive = insensitive_parameters(f, System::Qubit);
        std::string names;
        for (const auto& n : insensitive) names += (names.empty() ? "" : ",") + n;
        if (r.matched) {
            add("closed_form.qubit", true, "matches a net, residual " + detail::sci(r.residual));
        } else {
            warn("closed_form.qubit", "static qubit closed form has no dependence on " + (names.empty() ? "-" : names) +
                                          "; best net residual " + detail::fmt("%.6f", r.residual) +
                                          ", standard net residual " + detail::fmt("%.6f", r.default_residual));
        }
        const auto& ops = opsets.at(2);
        double rtn_dev = 0;
        const RtnParams p{0.001, 0.05};
        for (int k = 0; k < 10; ++k) {
            const Matrix rho = detail::random_density(2, rng);
            const double t = 3.0 * k;
            const DwfTable printed = closed_form_qubit_rtn_dwf(qubit_bloch(rho), rtn_kernel(t, p));
            const DwfTable built = compute_dwf(evolve(rho, System::Qubit, ChannelSpec::rtn(0.001, 0.05), t), ops);
            rtn_dev = std::max(rtn_dev, (printed.entries - built.entries).cwiseAbs().maxCoeff());
        }
        if (rtn_dev <= 1e-10) {
            add("closed_form.qubit_rtn", true, "matches the standard net, max deviation " + detail::sci(rtn_dev));
        } else {
            warn("closed_form.qubit_rtn", "differs from the standard net by up to " + detail::fmt("%.6f", rtn_dev));
        }
    }
    for (int d : {3, 4}) {
        const auto r = find_matching_net(closed_form_for(d), PhaseSpace(d), mubs.at(d));
        std::string sigma, perms;
        for (int s : r.assignment.striation_to_basis) sigma += std::to_string(s);
        for (const auto& p : r.assignment.line_to_vector) {
            perms += perms.empty() ? "" : " ";
            for (int j : p) perms += std::to_string(j);
        }
        const std::string name = "net_search.d" + std::to_string(d);
        std::string detail = std::string(r.matched ? "matched" : "no exact match") + ", residual " +
                             detail::sci(r.residual) + ", striation->basis " + sigma + ", line->vector " + perms +
                             ", standard net residual " + detail::fmt("%.6f", r.default_residual) + ", " +
                             std::to_string(r.cost_evaluations) + " cost evaluations";
        if (!r.matched) {
            add(name, false, detail);
        } else if (r.default_residual > 1e-9) {
            warn(name, "closed form uses a non-standard net: " + detail);
        } else {
            add(name, true, detail);
        }
    }

    // correlation matrix from the two-qubit closed form
    {
        const Preset p = preset("twoqubit_ns1");
        const TwoQubitBloch b = two_qubit_bloch(p.state);
        const DwfTable table = closed_form_two_qubit_dwf(b);
        const Matrix3 printed = correlation_printed(table);
        std::string flipped, kept;
        double worst = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double t = b.t[i][j];
                const std::string cell = "t" + std::to_string(i + 1) + std::to_string(j + 1);
                worst = std::max(worst, std::abs(printed(i, j) - t));
                if (std::abs(printed(i, j) + t) <= 1e-10 && std::abs(t) > 1e-10) flipped += cell + " ";
                else if (std::abs(printed(i, j) - t) <= 1e-10) kept += cell + " ";
            }
        const double t33 = b.t[2][2];
        const std::string detail = "on the closed-form table: t33 = " + detail::fmt("%.4f", t33) +
                                   " comes back as " + detail::fmt("%.4f", printed(2, 2)) + "; sign flipped: " +
                                   (flipped.empty() ? "none " : flipped) + "; unchanged: " +
                                   (kept.empty() ? "none " : kept) + "; max deviation " + detail::fmt("%.4f", worst);
        if (worst <= 1e-10) add("correlation.printed_formulas", true, detail);
        else warn("correlation.printed_formulas", detail);

        double primary = 0;
        for (int k = 0; k < 20; ++k) {
            const Matrix rho = detail::random_density(4, rng);
            primary = std::max(primary, (correlation_from_dwf(compute_dwf(rho, opsets.at(4)), opsets.at(4)).primary -
                                         correlation_direct(rho))
                                            .cwiseAbs()
                                            .maxCoeff());
        }
        add("correlation.reconstruction", primary <= 1e-10, "reconstructed vs direct T, max " + detail::sci(primary));
    }

    // measures
    {
        double bell = 0;
        for (BellLabel l : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus}) {
            const Matrix rho = bell_state(l);
            bell = std::max({bell, std::abs(concurrence(rho) - 1), std::abs(teleportation_fidelity(rho).fidelity - 1)});
        }
        add("measures.bell", bell <= 1e-12, "max |C-1|, |F-1| " + detail::sci(bell));
    }
    return rep;
}

}  // namespace dwf
