#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "risob/zygmund.hpp"

namespace risob {

/// The symbolic reference tables: one line per tabulated embedding-target
/// case plus the model moduli of continuity for the three Orlicz examples.
inline std::string golden_table() {
    using zygmund_detail::num;
    std::ostringstream os;

    struct finite_case {
        int n;
        double p, alpha;
    };
    const std::vector<finite_case> finite = {
        {3, 2.0, 0.0}, {2, 1.5, 1.0}, {3, 1.0, 0.0}, {2, 2.0, 0.0},
        {2, 2.0, 0.5}, {3, 3.0, 2.0}, {2, 2.0, 1.5}, {2, 4.0, 0.0},
    };
    for (const auto& c : finite) {
        const auto d = zygmund_table(AsymptoticClass::near_infinity(c.p, c.alpha), c.n,
                                     table_setting::finite_e10);
        os << "finite n=" << c.n << " p=" << num(c.p) << " alpha=" << num(c.alpha)
           << ": orlicz=" << d.orlicz << "; ri=" << d.ri << "\n";
    }

    struct rn_case {
        int n;
        double p0, a0, p, a;
    };
    const std::vector<rn_case> rn_e10 = {
        {3, 1.5, 0.0, 2.0, 1.0},
        {3, 3.0, 3.0, 2.0, 0.0},
        {2, 1.5, 0.0, 2.0, 0.5},
        {2, 1.5, 0.0, 2.0, 1.0},
        {2, 1.5, 0.0, 4.0, 0.0},
    };
    for (const auto& c : rn_e10) {
        const auto d = zygmund_table(AsymptoticClass::two_sided(c.p0, c.a0, c.p, c.a), c.n,
                                     table_setting::rn_e10);
        os << "rn-e10 n=" << c.n << " near0=(" << num(c.p0) << "," << num(c.a0) << ") nearinf=("
           << num(c.p) << "," << num(c.a) << "): orlicz=" << d.orlicz << "; ri=" << d.ri << "\n";
    }

    const std::vector<rn_case> rn_e1 = {
        {3, 2.0, -1.0, 2.0, 0.0},
        {2, 2.0, 0.0, 2.0, 0.5},
        {2, 2.0, 0.0, 2.0, 1.0},
        {2, 4.0, 0.0, 4.0, 0.0},
    };
    for (const auto& c : rn_e1) {
        const auto d = zygmund_table(AsymptoticClass::two_sided(c.p0, c.a0, c.p, c.a), c.n,
                                     table_setting::rn_e1);
        os << "rn-e1 n=" << c.n << " near0=(" << num(c.p0) << "," << num(c.a0) << ") nearinf=("
           << num(c.p) << "," << num(c.a) << "): orlicz=" << d.orlicz << "; ri=" << d.ri << "\n";
    }

    // model moduli of continuity near zero
    os << "sigma linf n=2: r (log 1/r)^1\n";
    for (double beta : {0.5, 1.0, 2.0})
        os << "sigma exp beta=" << num(beta) << " n=2: r (log 1/r)^" << num(1.0 + 1.0 / beta)
           << "\n";
    {
        const int n = 2;
        const double alpha = 3.0;
        os << "sigma lnlog n=" << n << " alpha=" << num(alpha) << ": (log 1/r)^"
           << num((n - 1.0 - alpha) / n) << "\n";
    }
    return os.str();
}

}  // namespace risob
