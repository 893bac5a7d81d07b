#pragma once

#include <optional>
#include <string>

#include "ipls/model.hpp"
#include "ipls/precond.hpp"

namespace ipls {

enum class Method { PKI, PHBR };

std::string method_name(Method m);

// x(e) = F*e + a for e in [-1,1]^K admissible for the source system.
struct PSolution {
    Mat F;             // n x K
    IntervalVector a;  // n
};

struct SolveResult {
    PSolution psolution;
    IntervalVector outer;
    std::vector<std::optional<Interval>> inner;  // per-component, empty marker allowed
    int iterations = 0;
    Method method = Method::PKI;
    Strategy strategy = Strategy::Left;
    double rho = 0.0;
    bool max_iter_reached = false;
};

struct PkiOptions {
    double tol = 1e-10;
    int max_iter = 200;
    bool residual_correction = true;
    Order order = Order::Auto;
};

// Parametric Krawczyk iteration on p-solution forms.
SolveResult pki(const IntervalAffineSystem& sys, const Preconditioner& pc,
                const PkiOptions& opts = {});

// Direct parametric Hansen-Bliek-Rohn enclosure of the relaxed preconditioned
// system; exact hull for nonparametric identity-midpoint systems.
SolveResult phbr(const IntervalAffineSystem& sys, const Preconditioner& pc,
                 Order order = Order::Auto);

IntervalVector outer_box(const PSolution& ps);
std::vector<std::optional<Interval>> inner_estimate(const PSolution& ps);

// (1 - width(x)/width(y)) * 100, for x inside y.
double overestimation(const Interval& x, const Interval& y);

}  // namespace ipls
