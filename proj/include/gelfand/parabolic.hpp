// Time integration of the coupled parabolic system
//   U_t - Lap U = lambda g(U) + nu (V - U),   alpha V_t - d Lap V = nu (U - V),
// from zero initial data, with adaptive first-order IMEX stepping, blow-up and
// steady-state detection, and energy monitoring.
#pragma once

#include <vector>

#include "gelfand/stationary.hpp"

namespace gelfand {

struct EvolveParams {
    ProblemParams problem;
    double alpha = 1.0;            // phase heat-capacity ratio, > 0
    double dt0 = 1e-3;             // initial (and maximal) time step
    double t_end = 100.0;
    double blowup_threshold = 1e3;
    double steady_tol = 1e-9;
    double trace_interval = 0.0;   // 0 -> t_end / 500
    bool store_snapshots = false;  // keep full fields at trace times
    // Optional initial data (interior values); empty means zero. Runs with
    // nonzero data are excluded from the time-monotonicity guarantees.
    std::vector<double> u0;
    std::vector<double> v0;
};

enum class EvolveOutcome { SteadyState, BlowUp, TimeLimitReached };

struct TraceSample {
    double t = 0.0;
    double max_u = 0.0;
    double max_v = 0.0;
    double energy = 0.0;
    double dt = 0.0;
};

struct EvolveReport {
    EvolveOutcome outcome = EvolveOutcome::TimeLimitReached;
    double t_final = 0.0;  // for BlowUp: threshold-crossing time, a lower bound
                           // on the singularity time
    TwoPhaseState state;   // last accepted state
    std::vector<TraceSample> trace;
    std::vector<double> snapshot_times;
    std::vector<TwoPhaseState> snapshots;
    EvolveParams params;
};

// One IMEX step solves the block system with time-augmented diagonal
// [[(1/dt + nu) I - Lap, -nu I], [-nu I, (alpha/dt + nu) I - d Lap]] and the
// reaction lambda g(U) taken explicitly at the old level. dt halves after any
// step whose relative increment exceeds 10% (and on energy increase or a
// non-finite result the step is retried), doubles back up to dt0 below 1%.
// Steady state: ||dU/dt||_inf + ||dV/dt||_inf < steady_tol, checked only at
// fully relaxed steps (dt == dt0). Blow-up: threshold crossed and dt driven
// below 1e-12 with at least 10 halvings in the last 100 step attempts; dt
// underflow without a crossing throws NumericalError.
EvolveReport evolve(const EvolveParams& ep, const Grid& grid);

// Discrete energy 1/2 sum [ |grad U|^2 + d |grad V|^2 + nu (U-V)^2 + 2 lambda Phi(U) ]
// with one-sided edge gradients (boundary edges included) and trapezoid weights.
// Clamped to the double range when Phi overflows during blow-up transients.
double energy(const TwoPhaseState& s, const ProblemParams& p);

// True iff max U and max V are nondecreasing along the trace (tolerance 1e-10)
// and, when snapshots are stored, the full fields are nodewise nondecreasing.
bool monotonicity_check(const EvolveReport& report);

// h-weighted L1 distance between the steady state and a converged stationary
// solution, both components summed. Throws std::invalid_argument unless the
// outcomes, grids, and parameters match.
double compare_with_stationary(const EvolveReport& report, const StationaryReport& s);

}  // namespace gelfand
