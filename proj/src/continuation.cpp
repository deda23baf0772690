#include "gelfand/continuation.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace gelfand {

namespace {

// Existence probe: true iff the monotone iteration converges at this lambda.
// A cap hit with shrinking increments gets one retry at 4x the budget, continued
// from the capped iterate (any iterate of the nondecreasing sequence is a valid
// restart point); a still-capped probe is classified by its increment trend.
bool probe_exists(const ProblemParams& p, const Grid& grid, double tol, int max_iter,
                  TwoPhaseState& warm, int& evaluations) {
    ++evaluations;
    StationaryReport rep = monotone_iterate(p, grid, tol, max_iter, 1e6,
                                            warm.u.grid ? &warm : nullptr);
    if (rep.status == SolveStatus::IterationCapReached && rep.increment_ratio < 1.0) {
        ++evaluations;
        rep = monotone_iterate(p, grid, tol, 4 * max_iter, 1e6, &rep.state);
    }
    switch (rep.status) {
        case SolveStatus::Converged:
            warm = std::move(rep.state);
            return true;
        case SolveStatus::Diverged:
            return false;
        case SolveStatus::IterationCapReached:
            // Undecided at the budget: a shrinking tail sits below the true
            // solution, so keep it as the next warm start.
            if (rep.increment_ratio < 1.0) {
                warm = std::move(rep.state);
                return true;
            }
            return false;
    }
    return false;
}

}  // namespace

CriticalResult find_lambda_star(double nu, double d, const Reaction& reaction,
                                const Grid& grid, double bracket_tol, double tol,
                                int max_iter) {
    CriticalResult out;
    out.nu = nu;
    ProblemParams p{0.0, nu, d, reaction};
    validate(p);
    if (!(bracket_tol > 0.0)) throw std::invalid_argument("find_lambda_star: bracket_tol <= 0");

    try {
        const double mu1 = principal_eigenpair(grid).first;
        double lo = 0.0;
        double hi = nonexistence_bound(p, mu1);

        TwoPhaseState warm;  // converged solution at the current lower end
        TwoPhaseState scratch = warm;
        p.lambda = hi;
        if (probe_exists(p, grid, tol, max_iter, scratch, out.evaluations))
            throw std::logic_error("find_lambda_star: solution exists above the bound");

        while (hi - lo > 2.0 * bracket_tol) {
            const double mid = 0.5 * (lo + hi);
            p.lambda = mid;
            TwoPhaseState trial = warm;
            if (probe_exists(p, grid, tol, max_iter, trial, out.evaluations)) {
                lo = mid;
                warm = std::move(trial);
            } else {
                hi = mid;
            }
        }
        out.lambda_star = 0.5 * (lo + hi);
        out.bracket_width = 0.5 * (hi - lo);
        out.ok = true;
    } catch (const NumericalError& e) {
        out.ok = false;
        out.error = e.what();
    }
    return out;
}

SweepResult sweep_nu(const std::vector<double>& nu_values, double d,
                     const Reaction& reaction, const Grid& grid, double bracket_tol,
                     int jobs, double tol, int max_iter) {
    SweepResult result;
    result.d = d;
    result.reaction = reaction_tag(reaction);
    result.entries.resize(nu_values.size());

    auto run_one = [&](size_t i) {
        try {
            result.entries[i] =
                find_lambda_star(nu_values[i], d, reaction, grid, bracket_tol, tol, max_iter);
        } catch (const std::exception& e) {
            result.entries[i].nu = nu_values[i];
            result.entries[i].ok = false;
            result.entries[i].error = e.what();
        }
    };

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(nu_values.size())));
    if (workers == 1) {
        for (size_t i = 0; i < nu_values.size(); ++i) run_one(i);
        return result;
    }

    // Entries land at their input index, so the output is deterministic no
    // matter how the workers interleave.
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < nu_values.size(); i = next.fetch_add(1))
                run_one(i);
        });
    for (auto& t : pool) t.join();
    return result;
}

namespace {

// Scalar monotone iteration for -Lap w = lambda * scale * g(w); same existence
// proxy as the coupled probe.
bool scalar_probe(const Reaction& reaction, const Grid& grid, double lambda, double scale,
                  double tol, int max_iter, Field& warm) {
    Field cur = warm.grid ? warm : make_field(grid);
    HelmholtzOp lap{1.0, 0.0, &grid};
    Field rhs = make_field(grid);
    double prev_inc = 0.0, ratio = 0.0;
    int grew = 0;
    for (int k = 1; k <= max_iter; ++k) {
        for (int i = 0; i < grid.n; ++i)
            rhs.values[i] = lambda * scale * g_eval(reaction, std::max(cur.values[i], 0.0));
        if (!all_finite(rhs.values)) return false;
        Field nxt = helmholtz_solve(lap, rhs);
        if (!all_finite(nxt.values) || sup_norm(nxt.values) > 1e6) return false;
        double inc = 0.0;
        for (int i = 0; i < grid.n; ++i)
            inc = std::max(inc, std::abs(nxt.values[i] - cur.values[i]));
        ratio = (prev_inc > 0.0) ? inc / prev_inc : 0.0;
        grew = (k > 1 && inc > prev_inc) ? grew + 1 : 0;
        if (grew >= 50) return false;
        prev_inc = inc;
        cur = std::move(nxt);
        if (inc < tol) {
            warm = std::move(cur);
            return true;
        }
    }
    // Classify a capped probe by its increment trend, like the coupled probe.
    if (ratio < 1.0) {
        warm = std::move(cur);
        return true;
    }
    return false;
}

}  // namespace

double classical_lambda_star(const Reaction& reaction, const Grid& grid, double bracket_tol,
                             double g_scale, double tol, int max_iter) {
    if (!(g_scale > 0.0)) throw std::invalid_argument("classical_lambda_star: g_scale <= 0");
    if (!(bracket_tol > 0.0)) throw std::invalid_argument("classical_lambda_star: bracket_tol <= 0");
    const double mu1 = principal_eigenpair(grid).first;

    double lo = 0.0;
    double hi = mu1 / (eta_constant(reaction) * g_scale);
    Field warm;
    Field scratch;
    if (scalar_probe(reaction, grid, hi, g_scale, tol, max_iter, scratch))
        throw std::logic_error("classical_lambda_star: solution exists above the bound");
    while (hi - lo > 2.0 * bracket_tol) {
        const double mid = 0.5 * (lo + hi);
        Field trial = warm;
        if (scalar_probe(reaction, grid, mid, g_scale, tol, max_iter, trial)) {
            lo = mid;
            warm = std::move(trial);
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_spaced: need 0 < lo <= hi");
    if (count < 1) throw std::invalid_argument("log_spaced: count < 1");
    std::vector<double> out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    const double ratio = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(ratio * i));
    out.back() = hi;  // pin the endpoint against accumulated round-off
    return out;
}

}  // namespace gelfand
