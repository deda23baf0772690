// Linear algebra for the discrete operators: tridiagonal direct solves,
// the coupled two-component block solve, and the principal Dirichlet eigenpair.
#pragma once

#include <stdexcept>
#include <utility>

#include "gelfand/grid.hpp"

namespace gelfand {

// Deterministic numerical breakdown (CG stall, iteration caps, dt underflow).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (-a*Lap_h + c*I), symmetric positive definite for a > 0, c >= 0.
struct HelmholtzOp {
    double a = 1.0;
    double c = 0.0;
    const Grid* grid = nullptr;
};

// Direct tridiagonal elimination; residual max-norm <= 1e-12 * (||rhs||_inf + 1).
Field helmholtz_solve(const HelmholtzOp& op, const Field& rhs);

// The 2n x 2n symmetric block [[-Lap_h + nu I, -nu I], [-nu I, -d Lap_h + nu I]].
// Positive definite: the 2x2 symbol determinant is d mu^2 + (1+d) mu nu > 0.
struct BlockOp {
    double nu = 1.0;
    double d = 1.0;
    const Grid* grid = nullptr;
};

// Solves [[-Lap_h + diag(c1), -nu I], [-nu I, -d Lap_h + c2 I]] (x, y) = (f, g)
// by Schur elimination of y: the second row gives y = (-d Lap_h + c2)^{-1} (nu x + g),
// and the Schur complement -Lap_h + diag(c1) - nu^2 (-d Lap_h + c2)^{-1} is solved
// with matrix-free conjugate gradients, preconditioned by the tridiagonal
// -Lap_h + diag(c1) - s with the low-frequency Schur shift s (relative residual
// 1e-12 on the true residual, cap 10n).
// The block operator must be SPD; c1 may vary nodewise (it absorbs time-step
// and linearization terms). Throws NumericalError on CG non-convergence.
std::pair<Field, Field> coupled_solve(const Grid& grid, const std::vector<double>& c1,
                                      double c2, double nu, double d,
                                      const Field& f, const Field& g);

// The constant-coefficient case used by the monotone iteration.
std::pair<Field, Field> block_solve(const BlockOp& op, const Field& f, const Field& g);

// Smallest eigenvalue and positive eigenvector of -Lap_h via inverse power
// iteration; phi1 normalized to h-weighted L1 norm 1. Iterates until successive
// eigenvalue estimates differ by < 1e-12 and the eigen-residual drops below
// 1e-10 * mu1; cap 1e4 iterations.
std::pair<double, Field> principal_eigenpair(const Grid& grid);

}  // namespace gelfand
