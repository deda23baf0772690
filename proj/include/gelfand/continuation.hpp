// Critical-parameter location: bisection on lambda over solver-certified
// existence, nu-sweeps of the critical curve, and the single-equation
// (classical Gelfand) critical value used as the decoupled-limit reference.
#pragma once

#include <string>
#include <vector>

#include "gelfand/stationary.hpp"

namespace gelfand {

struct CriticalResult {
    double nu = 0.0;
    double lambda_star = 0.0;
    double bracket_width = 0.0;  // half-width: converged at lambda_star - w, not at + w
    int evaluations = 0;         // monotone-iteration probes performed
    bool ok = false;
    std::string error;           // set when ok == false
};

struct SweepResult {
    std::vector<CriticalResult> entries;  // in input nu order
    double d = 1.0;
    std::string reaction;
};

// Bisection on lambda with initial bracket [0, lambda**]; every probe runs the
// monotone iteration, warm-started from the solution at the current lower end
// (a subsolution, so monotone convergence is preserved). A probe that hits the
// iteration cap with shrinking increments is retried at 4x the cap before being
// classified. Throws std::logic_error if the upper bound converges.
CriticalResult find_lambda_star(double nu, double d, const Reaction& reaction,
                                const Grid& grid, double bracket_tol = 1e-4,
                                double tol = 1e-10, int max_iter = 10000);

// One CriticalResult per nu, in input order, deterministic regardless of the
// number of workers; individual failures are recorded per entry.
SweepResult sweep_nu(const std::vector<double>& nu_values, double d,
                     const Reaction& reaction, const Grid& grid,
                     double bracket_tol = 1e-4, int jobs = 1,
                     double tol = 1e-10, int max_iter = 10000);

// Critical value of the scalar problem -Lap w = Lambda * g_scale * g(w) by the
// same existence bisection with scalar monotone iteration. g_scale rescales the
// reaction (used by the large-nu limit Lambda*(1+d) checks).
double classical_lambda_star(const Reaction& reaction, const Grid& grid,
                             double bracket_tol = 1e-4, double g_scale = 1.0,
                             double tol = 1e-10, int max_iter = 10000);

// Logarithmically spaced values in [lo, hi], endpoints included.
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace gelfand
