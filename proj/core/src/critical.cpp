#include "pdolab/critical.hpp"

#include <algorithm>
#include <cmath>

#include "pdolab/common.hpp"

namespace pdolab {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError("critical_order: " + msg);
}

}  // namespace

double critical_order(const std::string& tag, int n, double p, double r, double rho, double delta,
                      bool dual) {
    require(n == 1 || n == 2, "n must be 1 or 2");
    require(rho >= 0.0 && rho <= 1.0, "rho must lie in [0,1]");
    require(delta >= 0.0 && delta < 1.0, "delta must lie in [0,1)");
    const double nn = n;
    const double penalty = std::max(delta - rho, 0.0);

    if (tag == "th2") {
        require(p > 1.0 && p <= 2.0, "th2 requires 1 < p <= 2");
        const double base = -nn * (1.0 - rho) / p;
        return dual ? base - 0.5 * nn * penalty : base;
    }
    if (tag == "th3") {
        require(rho > 0.0, "th3 requires 0 < rho <= 1");
        return -nn * (1.0 - rho);
    }
    if (tag == "th5") {
        require(rho > 0.0 && rho < 1.0, "th5 requires 0 < rho < 1");
        require(dual, "th5 governs the dual operator only");
        return -nn * (1.0 - rho);
    }
    if (tag == "lp1") {
        require(p > 1.0, "lp1 requires 1 < p < inf");
        require(!dual, "lp1 governs the direct operator only");
        return -nn * (1.0 - rho) * std::abs(0.5 - 1.0 / p) - nn * penalty / std::max(p, 2.0);
    }
    if (tag == "lp2") {
        require(p > 1.0, "lp2 requires 1 < p < inf");
        require(dual, "lp2 governs the dual operator only");
        return -nn * (1.0 - rho) * std::abs(0.5 - 1.0 / p) - nn * penalty * (1.0 - 1.0 / std::min(p, 2.0));
    }
    if (tag == "weight2") {
        require(r >= 1.0 && r <= 2.0, "weight2 requires 1 <= r <= 2");
        const double base = -(nn / r) * (1.0 - rho);
        return dual ? base - 0.5 * nn * penalty : base;
    }
    if (tag == "weight3") {
        require(rho > 0.0, "weight3 requires 0 < rho <= 1");
        return -nn * (1.0 - rho);
    }
    if (tag == "weight1") {
        require(rho > 0.0 && rho < 1.0, "weight1 requires 0 < rho < 1");
        require(dual, "weight1 governs the dual operator only");
        return -nn * (1.0 - rho);
    }
    if (tag == "th1" || tag == "th6") {
        require(p > 0.0 && p <= 1.0, tag + " requires 0 < p <= 1");
        if (tag == "th6") require(p < 1.0, "th6 requires p < 1");
        const double base = -nn * (1.0 - rho) * (1.0 / p - 0.5);
        return dual ? base - 0.5 * nn * penalty : base;
    }
    throw ConfigError("critical_order: unknown theorem tag '" + tag + "'");
}

}  // namespace pdolab
