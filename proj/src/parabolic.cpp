#include "gelfand/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace gelfand {

namespace {

double clamp_nonneg(double s) {
    if (s < -1e-9) throw NumericalError("evolve: state left the nonnegative cone");
    return s < 0.0 ? 0.0 : s;
}

void validate_evolve(const EvolveParams& ep, const Grid& grid) {
    validate(ep.problem);
    if (!(ep.alpha > 0.0)) throw std::invalid_argument("evolve: alpha must be > 0");
    if (!(ep.dt0 > 0.0)) throw std::invalid_argument("evolve: dt0 must be > 0");
    if (!(ep.t_end > 0.0)) throw std::invalid_argument("evolve: t_end must be > 0");
    if (!(ep.blowup_threshold > 0.0))
        throw std::invalid_argument("evolve: blowup_threshold must be > 0");
    if (!(ep.steady_tol > 0.0)) throw std::invalid_argument("evolve: steady_tol must be > 0");
    const size_t n = static_cast<size_t>(grid.n);
    if (!ep.u0.empty() && ep.u0.size() != n)
        throw std::invalid_argument("evolve: u0 size does not match the grid");
    if (!ep.v0.empty() && ep.v0.size() != n)
        throw std::invalid_argument("evolve: v0 size does not match the grid");
    for (double s : ep.u0)
        if (!std::isfinite(s) || s < 0.0)
            throw std::invalid_argument("evolve: u0 must be finite and nonnegative");
    for (double s : ep.v0)
        if (!std::isfinite(s)) throw std::invalid_argument("evolve: v0 must be finite");
}

}  // namespace

double energy(const TwoPhaseState& s, const ProblemParams& p) {
    if (!same_grid(s.u, s.v)) throw std::invalid_argument("energy: grid mismatch");
    const Grid& grid = *s.u.grid;
    const int n = grid.n;
    const double inv_h = 1.0 / grid.h;

    // Dirichlet part: squared one-sided differences over the n+1 edges,
    // boundary values being zero.
    double grad_u = 0.0, grad_v = 0.0;
    for (int e = 0; e <= n; ++e) {
        const double ul = (e > 0) ? s.u.values[e - 1] : 0.0;
        const double ur = (e < n) ? s.u.values[e] : 0.0;
        const double vl = (e > 0) ? s.v.values[e - 1] : 0.0;
        const double vr = (e < n) ? s.v.values[e] : 0.0;
        grad_u += (ur - ul) * (ur - ul);
        grad_v += (vr - vl) * (vr - vl);
    }
    double nodal = 0.0;
    for (int i = 0; i < n; ++i) {
        const double diff = s.u.values[i] - s.v.values[i];
        nodal += p.nu * diff * diff +
                 2.0 * p.lambda * phi_antiderivative(p.reaction, clamp_nonneg(s.u.values[i]));
    }
    double e_total = 0.5 * (inv_h * (grad_u + p.d * grad_v) + grid.h * nodal);
    if (!std::isfinite(e_total))
        e_total = (e_total > 0.0) ? std::numeric_limits<double>::max()
                                  : std::numeric_limits<double>::lowest();
    return e_total;
}

EvolveReport evolve(const EvolveParams& ep, const Grid& grid) {
    validate_evolve(ep, grid);
    const int n = grid.n;
    const ProblemParams& p = ep.problem;

    EvolveReport rep;
    rep.params = ep;
    rep.state.u = make_field(grid);
    rep.state.v = make_field(grid);
    if (!ep.u0.empty()) rep.state.u.values = ep.u0;
    if (!ep.v0.empty()) rep.state.v.values = ep.v0;

    const double trace_interval = (ep.trace_interval > 0.0) ? ep.trace_interval : ep.t_end / 500.0;
    double t = 0.0;
    double dt = ep.dt0;
    double e_prev = energy(rep.state, p);

    auto record = [&](double step_used) {
        rep.trace.push_back({t, sup_norm(rep.state.u.values), sup_norm(rep.state.v.values),
                             energy(rep.state, p), step_used});
        if (ep.store_snapshots) {
            rep.snapshot_times.push_back(t);
            rep.snapshots.push_back(rep.state);
        }
    };
    record(dt);
    double next_trace = trace_interval;

    // Sliding window over step attempts; each entry says whether that attempt
    // ended in a halving. Rapid halvings + a threshold crossing = blow-up.
    std::deque<bool> window;
    int halvings = 0;
    auto note_attempt = [&](bool halved) {
        window.push_back(halved);
        halvings += halved ? 1 : 0;
        if (window.size() > 100) {
            halvings -= window.front() ? 1 : 0;
            window.pop_front();
        }
    };

    bool crossed = false;
    double crossing_time = 0.0;
    Field f = make_field(grid), g_rhs = make_field(grid);

    auto halve_and_check = [&]() {
        dt *= 0.5;
        note_attempt(true);
        if (dt < 1e-12 && halvings >= 10) {
            if (crossed) {
                rep.outcome = EvolveOutcome::BlowUp;
                rep.t_final = crossing_time;
                return true;
            }
            if (dt < 1e-15)
                throw NumericalError("evolve: time step underflow without blow-up");
        } else if (dt < 1e-15) {
            throw NumericalError("evolve: time step underflow without blow-up");
        }
        return false;
    };

    const long attempt_cap = 50000000;
    for (long attempt = 0;; ++attempt) {
        if (attempt == attempt_cap) throw NumericalError("evolve: step attempt cap reached");
        if (t >= ep.t_end * (1.0 - 1e-14)) {
            rep.outcome = EvolveOutcome::TimeLimitReached;
            rep.t_final = t;
            break;
        }
        const double dt_step = std::min(dt, ep.t_end - t);

        // Explicit reaction, implicit diffusion and exchange.
        bool bad_rhs = false;
        for (int i = 0; i < n && !bad_rhs; ++i) {
            const double gu = g_eval(p.reaction, clamp_nonneg(rep.state.u.values[i]));
            f.values[i] = rep.state.u.values[i] / dt_step + p.lambda * gu;
            g_rhs.values[i] = ep.alpha * rep.state.v.values[i] / dt_step;
            if (!std::isfinite(f.values[i]) || std::abs(f.values[i]) > 1e150) bad_rhs = true;
        }
        if (bad_rhs) {
            if (halve_and_check()) break;
            continue;
        }

        std::vector<double> c1(n, 1.0 / dt_step + p.nu);
        auto [u_new, v_new] = coupled_solve(grid, c1, ep.alpha / dt_step + p.nu, p.nu, p.d, f, g_rhs);
        if (!all_finite(u_new.values) || !all_finite(v_new.values)) {
            if (halve_and_check()) break;
            continue;
        }

        TwoPhaseState trial{std::move(u_new), std::move(v_new)};
        const double e_new = energy(trial, p);
        if (e_new > e_prev + 1e-8 * std::max(1.0, std::abs(e_prev))) {
            if (halve_and_check()) break;
            continue;
        }

        double inc = 0.0;
        for (int i = 0; i < n; ++i) {
            inc = std::max(inc, std::abs(trial.u.values[i] - rep.state.u.values[i]));
            inc = std::max(inc, std::abs(trial.v.values[i] - rep.state.v.values[i]));
        }
        const double scale = std::max(1.0, sup_norm(rep.state.u.values) +
                                               sup_norm(rep.state.v.values));
        const double rel_inc = inc / scale;

        // Accept.
        t += dt_step;
        rep.state = std::move(trial);
        e_prev = e_new;

        const double max_u = sup_norm(rep.state.u.values);
        const double max_v = sup_norm(rep.state.v.values);
        if (!crossed && std::max(max_u, max_v) > ep.blowup_threshold) {
            crossed = true;
            crossing_time = t;
        }

        if (t >= next_trace - 1e-12 * ep.t_end) {
            record(dt_step);
            while (next_trace <= t + 1e-12 * ep.t_end) next_trace += trace_interval;
        }

        if (dt_step == dt && dt == ep.dt0 && inc / dt_step < ep.steady_tol) {
            rep.outcome = EvolveOutcome::SteadyState;
            rep.t_final = t;
            break;
        }

        if (rel_inc > 0.10) {
            if (halve_and_check()) break;
        } else {
            note_attempt(false);
            if (rel_inc < 0.01) dt = std::min(2.0 * dt, ep.dt0);
        }
    }

    if (rep.trace.empty() || rep.trace.back().t < t) record(std::min(dt, ep.dt0));
    return rep;
}

bool monotonicity_check(const EvolveReport& report) {
    const auto& tr = report.trace;
    for (size_t k = 1; k < tr.size(); ++k) {
        const double tol_u = 1e-10 * std::max(1.0, std::abs(tr[k - 1].max_u));
        const double tol_v = 1e-10 * std::max(1.0, std::abs(tr[k - 1].max_v));
        if (tr[k].max_u < tr[k - 1].max_u - tol_u) return false;
        if (tr[k].max_v < tr[k - 1].max_v - tol_v) return false;
    }
    for (size_t k = 1; k < report.snapshots.size(); ++k) {
        const auto& prev = report.snapshots[k - 1];
        const auto& next = report.snapshots[k];
        for (size_t i = 0; i < prev.u.values.size(); ++i) {
            if (next.u.values[i] < prev.u.values[i] - 1e-10 * (1.0 + std::abs(prev.u.values[i])))
                return false;
            if (next.v.values[i] < prev.v.values[i] - 1e-10 * (1.0 + std::abs(prev.v.values[i])))
                return false;
        }
    }
    return true;
}

double compare_with_stationary(const EvolveReport& report, const StationaryReport& s) {
    if (report.outcome != EvolveOutcome::SteadyState)
        throw std::invalid_argument("compare_with_stationary: evolution did not reach steady state");
    if (s.status != SolveStatus::Converged)
        throw std::invalid_argument("compare_with_stationary: stationary solve did not converge");
    const Grid* ga = report.state.u.grid;
    const Grid* gb = s.state.u.grid;
    if (!ga || !gb || ga->n != gb->n || ga->h != gb->h)
        throw std::invalid_argument("compare_with_stationary: grid mismatch");
    const ProblemParams& pa = report.params.problem;
    const ProblemParams& pb = s.params;
    if (pa.lambda != pb.lambda || pa.nu != pb.nu || pa.d != pb.d ||
        !same_reaction(pa.reaction, pb.reaction))
        throw std::invalid_argument("compare_with_stationary: parameter mismatch");

    std::vector<double> du(ga->n), dv(ga->n);
    for (int i = 0; i < ga->n; ++i) {
        du[i] = report.state.u.values[i] - s.state.u.values[i];
        dv[i] = report.state.v.values[i] - s.state.v.values[i];
    }
    return weighted_l1(*ga, du) + weighted_l1(*ga, dv);
}

}  // namespace gelfand
