// Minimal stationary solutions of the coupled system
//   -Lap u = lambda g(u) + nu (v - u),   -d Lap v = nu (u - v),   u = v = 0 on the boundary,
// by monotone iteration from zero, an independent shooting solver, the nonlocal
// reduction operator K_nu, the linearized stability eigenvalue, and the analytic
// nonexistence bound.
#pragma once

#include <utility>

#include "gelfand/grid.hpp"
#include "gelfand/linsolve.hpp"
#include "gelfand/reaction.hpp"

namespace gelfand {

struct ProblemParams {
    double lambda = 0.0;  // reaction intensity, >= 0
    double nu = 1.0;      // inter-phase heat exchange, > 0
    double d = 1.0;       // diffusivity ratio, > 0
    Reaction reaction;
};

void validate(const ProblemParams& p);

struct TwoPhaseState {
    Field u;
    Field v;
};

enum class SolveStatus { Converged, Diverged, IterationCapReached };

struct StationaryReport {
    SolveStatus status = SolveStatus::Diverged;
    TwoPhaseState state;        // solution iff Converged; last finite iterate otherwise
    int iterations = 0;
    double final_increment = 0.0;   // sup-norm of the last iterate difference
    double increment_ratio = 0.0;   // last increment / previous one (trend indicator)
    double residual = 0.0;          // defect of the defining equations (see below)
    ProblemParams params;
};

// Monotone iteration: (phi_k, psi_k) solves the linear cooperative block system
// with right-hand side (lambda g(phi_{k-1}), 0), starting from (0,0) or from a
// caller-supplied subsolution (warm start). The sequence is nondecreasing and
// converges exactly when a minimal solution exists; divergence is the discrete
// existence proxy. Diverged when ||phi_k||_inf > divergence_cap, when lambda g(phi)
// leaves the floating range, or when the increment grows 50 iterations in a row.
// On Converged, `residual` is the max-norm defect of the discrete nonlinear system.
StationaryReport monotone_iterate(const ProblemParams& p, const Grid& grid,
                                  double tol = 1e-10, int max_iter = 10000,
                                  double divergence_cap = 1e6,
                                  const TwoPhaseState* warm_start = nullptr);

// Shooting method on the symmetric slab: integrate the ODE system from x = 0
// with u'(0) = v'(0) = 0 and unknown center values, RK4 with step 1e-4, Newton
// (finite-difference Jacobian) on the boundary residual (u(1), v(1)), seeded at
// (0,0) to select the minimal branch. Newton failure after 100 steps reports
// Diverged. On success `residual` is the boundary defect max(|u(1)|, |v(1)|).
StationaryReport shooting_solve(const ProblemParams& p, const Grid& output_grid,
                                double tol = 1e-10);

// Nonlocal reduction operator K_nu f = d (f - nu (-gamma Lap + nu)^{-1} f),
// gamma = d/(1+d). Positive, with eigenvalues d*gamma*mu/(gamma*mu + nu) on the
// Dirichlet eigenfunctions of -Lap_h.
Field k_nu_apply(const ProblemParams& p, const Field& f);

// Max-norm residuals of (a) the reduced equation -Lap u = lambda/(1+d) (1 + K_nu) g(u)
// and (b) the reconstruction v = u - lambda*gamma*(-gamma Lap + nu)^{-1} g(u).
std::pair<double, double> nonlocal_residual(const ProblemParams& p, const TwoPhaseState& s);

// lambda** = (mu1/eta)(1 + kappa), kappa = nu d/(nu + mu1 d): no weak solution
// exists above this value, so it brackets lambda* from above.
double nonexistence_bound(const ProblemParams& p, double mu1);

// Principal eigenvalue of the linearization at a minimal solution,
//   [[-Lap + nu - lambda g'(u), -nu], [-nu, -d Lap + nu]],
// via inverse power iteration on the operator shifted by +1 (invertible for
// eigenvalues >= 0). Nonnegative at minimal solutions.
double linearized_principal_eigenvalue(const ProblemParams& p, const TwoPhaseState& s);

// Discrete residual components of the full nonlinear system at (u, v).
std::pair<double, double> stationary_residual(const ProblemParams& p, const TwoPhaseState& s);

}  // namespace gelfand
