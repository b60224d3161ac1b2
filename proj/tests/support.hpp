#pragma once

#include "biharm/expr.hpp"
#include "biharm/jet.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace biharm::testing {

/// Random DSL expressions in the variables x and y that are defined on
/// [-1, 1]²: logs, square roots and divisions only see arguments ≥ 1.
class ExprGen {
public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    std::string expression(int depth = 3) {
        if (depth == 0 || pick(4) == 0) return leaf();
        switch (pick(9)) {
        case 0: return "(" + expression(depth - 1) + " + " + expression(depth - 1) + ")";
        case 1: return "(" + expression(depth - 1) + " - " + expression(depth - 1) + ")";
        case 2: return "(" + expression(depth - 1) + " * " + expression(depth - 1) + ")";
        case 3: return "(" + expression(depth - 1) + ") / (2 + sin(" + expression(depth - 1) + "))";
        case 4: return "sin(" + expression(depth - 1) + ")";
        case 5: return "cos(" + expression(depth - 1) + ")";
        case 6: return "exp(sin(" + expression(depth - 1) + "))";
        case 7: return "log(1 + (" + expression(depth - 1) + ")^2)";
        default: return "sqrt(1 + (" + expression(depth - 1) + ")^2)";
        }
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    std::string leaf() {
        switch (pick(4)) {
        case 0: return "x";
        case 1: return "y";
        case 2: return "-x";
        default: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", uniform(-2.0, 2.0));
            return buf;
        }
        }
    }

    std::mt19937_64 rng_;
};

inline Jet eval_xy(const expr::Expr& e, double x, double y, int order) {
    expr::JetBindings vars;
    vars.emplace("x", Jet::variable(0, x, 2, order));
    vars.emplace("y", Jet::variable(1, y, 2, order));
    return expr::eval_jet(e, vars, {});
}

inline double eval_xy_real(const expr::Expr& e, double x, double y) {
    return expr::eval_real(e, {{"x", x}, {"y", y}});
}

/// |a − b| ≤ tol·(1 + |b|).
inline bool close_mixed(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}

} // namespace biharm::testing
