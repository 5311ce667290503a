#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "risob/common.hpp"

namespace risob {

/// Two-sided power-log-loglog growth class: near zero t^{p0} (log 1/t)^{a0}
/// (loglog 1/t)^{b0}, near infinity t^{p} (log t)^{a} (loglog t)^{b}.
struct AsymptoticClass {
    double p0 = 0.0, alpha0 = 0.0, beta0 = 0.0;
    double p = 0.0, alpha = 0.0, beta = 0.0;
    bool has_near_zero = false;

    static AsymptoticClass near_infinity(double p, double alpha, double beta = 0.0) {
        AsymptoticClass c;
        c.p = p;
        c.alpha = alpha;
        c.beta = beta;
        return c;
    }
    static AsymptoticClass two_sided(double p0, double alpha0, double p, double alpha) {
        AsymptoticClass c;
        c.p0 = p0;
        c.alpha0 = alpha0;
        c.p = p;
        c.alpha = alpha;
        c.has_near_zero = true;
        return c;
    }
};

enum class table_setting { finite_e10, finite_e1, rn_e10, rn_e1 };

/// Symbolic embedding targets: the optimal Orlicz space and the optimal
/// rearrangement-invariant space for the given growth class.
struct TargetDescriptor {
    std::string orlicz;
    std::string ri;
};

namespace zygmund_detail {

inline std::string num(double x) {
    if (std::isinf(x)) return "inf";
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// "L^6", "L^6(log L)^3", "L^2(loglog L)^-1"
inline std::string zygmund_space(double p, double alpha, bool loglog = false) {
    std::string s = "L^" + num(p);
    if (alpha != 0.0) s += std::string("(") + (loglog ? "loglog" : "log") + " L)^" + num(alpha);
    return s;
}

// "t^6", "t^6 (log t)^3", "t^2 (log 1/t)^-1"
inline std::string powlog_branch(double p, double alpha, bool one_over_t) {
    std::string s = "t^" + num(p);
    if (alpha != 0.0) s += std::string(" (log ") + (one_over_t ? "1/t" : "t") + ")^" + num(alpha);
    return s;
}

inline std::string lorentz_space(double p, double q) {
    return "L^(" + num(p) + "," + num(q) + ")";
}

inline std::string lorentz_zygmund_space(double p, double q, double alpha) {
    return "L^(" + (std::isinf(p) ? std::string("inf") : num(p)) + "," + num(q) + ";" + num(alpha) +
           ")";
}

}  // namespace zygmund_detail

/// Case table of optimal embedding targets for the power-log growth classes.
/// Pure symbolic case analysis; parameters outside the tabulated ranges raise
/// unsupported_space.
inline TargetDescriptor zygmund_table(const AsymptoticClass& cls, int n, table_setting setting) {
    using namespace zygmund_detail;
    if (n < 2) throw invalid_input("zygmund_table: n >= 2 required");
    const double nn = static_cast<double>(n);
    const double p = cls.p, a = cls.alpha;

    const bool inf_range_ok = (p > 1.0) || (p == 1.0 && a >= 0.0);
    if (!inf_range_ok)
        throw unsupported_space("zygmund_table: near-infinity exponents outside the table range");

    if (setting == table_setting::finite_e10 || setting == table_setting::finite_e1) {
        if (cls.beta != 0.0) {
            // loglog scale: only the Orlicz table is recorded
            if (cls.alpha != 0.0)
                throw unsupported_space("zygmund_table: mixed log/loglog class not tabulated");
            TargetDescriptor d;
            const double b = cls.beta;
            if (p < nn)
                d.orlicz = zygmund_space(nn * p / (nn - p), nn * b / (nn - p), true);
            else if (p == nn)
                d.orlicz = "exp((log L)^" + num(b / (nn - 1.0)) + ")";
            else
                d.orlicz = "L^inf";
            d.ri = "";
            return d;
        }
        TargetDescriptor d;
        if (p < nn) {
            d.orlicz = zygmund_space(nn * p / (nn - p), nn * a / (nn - p));
            d.ri = a == 0.0 ? lorentz_space(nn * p / (nn - p), p)
                            : lorentz_zygmund_space(nn * p / (nn - p), p, a / p);
        } else if (p == nn && a < nn - 1.0) {
            d.orlicz = "exp L^" + num(nn / (nn - 1.0 - a));
            d.ri = lorentz_zygmund_space(inf, nn, -1.0 + a / nn);
        } else if (p == nn && a == nn - 1.0) {
            d.orlicz = "exp exp L^" + num(nn / (nn - 1.0));
            d.ri = "L^(inf," + num(nn) + ";-1/n,-1)";
        } else {
            d.orlicz = "L^inf";
            d.ri = "L^inf";
        }
        return d;
    }

    // whole-space settings need the two-sided class
    if (!cls.has_near_zero)
        throw unsupported_space("zygmund_table: whole-space settings need a near-zero branch");
    if (cls.beta != 0.0 || cls.beta0 != 0.0)
        throw unsupported_space("zygmund_table: loglog classes not tabulated on the whole space");
    const double p0 = cls.p0, a0 = cls.alpha0;
    const bool zero_range_ok = (p0 > 1.0) || (p0 == 1.0 && a0 <= 0.0);
    if (!zero_range_ok)
        throw unsupported_space("zygmund_table: near-zero exponents outside the table range");

    const bool supercritical = (p > nn) || (p == nn && a > nn - 1.0);

    // near-infinity branch of the Sobolev conjugate (shared by both settings)
    std::string an_inf;
    if (p < nn)
        an_inf = powlog_branch(nn * p / (nn - p), nn * a / (nn - p), false);
    else if (p == nn && a < nn - 1.0)
        an_inf = "exp(t^" + num(nn / (nn - a - 1.0)) + ")";
    else if (p == nn && a == nn - 1.0)
        an_inf = "exp(exp(t^" + num(nn / (nn - 1.0)) + "))";
    else
        an_inf = "inf";

    // near-infinity branch of the hat function / of D
    std::string hat_inf;
    if (p < nn)
        hat_inf = powlog_branch(p, a, false);
    else if (p == nn && a < nn - 1.0)
        hat_inf = powlog_branch(nn, a - nn, false);
    else if (p == nn && a == nn - 1.0)
        hat_inf = "t^" + num(nn) + " (log t)^-1 (loglog t)^-" + num(nn);
    else
        hat_inf = "";

    if (setting == table_setting::rn_e10) {
        // zero-trace class: the construction needs integrability near zero
        const bool dec252 = (p0 < nn) || (p0 == nn && a0 > nn - 1.0);
        if (!dec252)
            throw unsupported_space(
                "zygmund_table: near-zero class fails ∫_0 (t/A)^{1/(n-1)} dt < ∞");
        std::string an_zero;
        if (p0 < nn)
            an_zero = powlog_branch(nn * p0 / (nn - p0), nn * a0 / (nn - p0), true);
        else
            an_zero = "exp(-t^-" + num(nn / (a0 + 1.0 - nn)) + ")";
        std::string hat_zero;
        if (p0 < nn)
            hat_zero = powlog_branch(p0, a0, true);
        else
            hat_zero = powlog_branch(nn, a0 - nn, true);

        TargetDescriptor d;
        d.orlicz = "LA{near0: " + an_zero + "; nearinf: " + an_inf + "}";
        if (!supercritical)
            d.ri = "L(A,n=" + num(nn) + "){near0: " + hat_zero + "; nearinf: " + hat_inf + "}";
        else
            d.ri = "LB(nu=min(s^-1/" + num(nn) + ",1)){near0: " + hat_zero + "; nearinf: inf}";
        return d;
    }

    // rn_e1: full-norm class
    const std::string bar_zero = powlog_branch(p0, a0, true);
    TargetDescriptor d;
    d.orlicz = "LA{near0: " + bar_zero + "; nearinf: " + an_inf + "}";
    if (supercritical)
        d.ri = d.orlicz;  // the Orlicz target is already optimal among r.i. spaces
    else
        d.ri = "Lambda(varpi=max(s^-1/" + num(nn) + ",1)){near0: " + bar_zero +
               "; nearinf: " + hat_inf + "}";
    return d;
}

}  // namespace risob
