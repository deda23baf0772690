#include "gelfand/stationary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace gelfand {

namespace {

// Iterates are nonnegative up to round-off; clamp the dust, reject real negatives.
double safe_nonneg(double s) {
    if (s < -1e-9) throw NumericalError("stationary: iterate left the nonnegative cone");
    return s < 0.0 ? 0.0 : s;
}

}  // namespace

void validate(const ProblemParams& p) {
    if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda))
        throw std::invalid_argument("params: lambda must be finite and >= 0");
    if (!(p.nu > 0.0) || !std::isfinite(p.nu))
        throw std::invalid_argument("params: nu must be finite and > 0");
    if (!(p.d > 0.0) || !std::isfinite(p.d))
        throw std::invalid_argument("params: d must be finite and > 0");
    if (p.reaction.kind == Reaction::Kind::PowerPlusOne && !(p.reaction.p > 1.0))
        throw std::invalid_argument("params: power reaction needs exponent > 1");
}

StationaryReport monotone_iterate(const ProblemParams& p, const Grid& grid, double tol,
                                  int max_iter, double divergence_cap,
                                  const TwoPhaseState* warm_start) {
    validate(p);
    StationaryReport rep;
    rep.params = p;

    TwoPhaseState cur;
    if (warm_start) {
        if (!same_grid(warm_start->u, warm_start->v) || warm_start->u.grid->n != grid.n)
            throw std::invalid_argument("monotone_iterate: warm start on a different grid");
        cur = *warm_start;
        cur.u.grid = &grid;
        cur.v.grid = &grid;
    } else {
        cur.u = make_field(grid);
        cur.v = make_field(grid);
    }

    BlockOp op{p.nu, p.d, &grid};
    Field rhs = make_field(grid);
    const Field zero = make_field(grid);

    double prev_inc = 0.0;
    int grew = 0;
    bool first_step = true;
    for (int k = 1; k <= max_iter; ++k) {
        for (int i = 0; i < grid.n; ++i)
            rhs.values[i] = p.lambda * g_eval(p.reaction, safe_nonneg(cur.u.values[i]));
        if (!all_finite(rhs.values)) {
            rep.status = SolveStatus::Diverged;
            rep.state = std::move(cur);
            rep.iterations = k - 1;
            rep.final_increment = prev_inc;
            rep.increment_ratio = std::numeric_limits<double>::infinity();
            return rep;
        }

        auto [phi, psi] = block_solve(op, rhs, zero);
        if (!all_finite(phi.values) || !all_finite(psi.values)) {
            rep.status = SolveStatus::Diverged;
            rep.state = std::move(cur);
            rep.iterations = k;
            rep.final_increment = prev_inc;
            rep.increment_ratio = std::numeric_limits<double>::infinity();
            return rep;
        }

        double inc = 0.0, worst_dip = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const double du = phi.values[i] - cur.u.values[i];
            const double dv = psi.values[i] - cur.v.values[i];
            inc = std::max(inc, std::max(std::abs(du), std::abs(dv)));
            worst_dip = std::min(worst_dip, std::min(du, dv));
        }
        // The iterate map is order-preserving and starts at a subsolution, so the
        // sequence is nondecreasing; any dip beyond round-off is a solver fault.
        const double slack = (first_step && warm_start ? 1e-8 : 1e-11) *
                             (1.0 + sup_norm(phi.values));
        if (worst_dip < -slack)
            throw NumericalError("monotone_iterate: sequence not monotone (solver fault)");
        first_step = false;

        rep.increment_ratio = (prev_inc > 0.0) ? inc / prev_inc : 0.0;
        grew = (k > 1 && inc > prev_inc) ? grew + 1 : 0;
        prev_inc = inc;
        cur.u = std::move(phi);
        cur.v = std::move(psi);
        rep.iterations = k;
        rep.final_increment = inc;

        if (sup_norm(cur.u.values) > divergence_cap || grew >= 50) {
            rep.status = SolveStatus::Diverged;
            rep.state = std::move(cur);
            return rep;
        }
        if (inc < tol) {
            rep.status = SolveStatus::Converged;
            rep.state = std::move(cur);
            auto [ru, rv] = stationary_residual(p, rep.state);
            rep.residual = std::max(ru, rv);
            return rep;
        }
    }
    rep.status = SolveStatus::IterationCapReached;
    rep.state = std::move(cur);
    return rep;
}

namespace {

// Reaction extended past the admissible range so transient Newton overshoots in
// the shooting iteration stay integrable; the converged trajectory never uses it.
double g_extended(const Reaction& r, double s) {
    if (r.kind == Reaction::Kind::Exponential) return std::exp(s);
    return (s > -1.0) ? std::pow(1.0 + s, r.p) : 0.0;
}

struct Trajectory {
    double step = 0.0;
    std::vector<double> u, up, v, vp;  // samples at x = j*step, j = 0..N
};

// Classic RK4 on u'' = -(lambda g(u) + nu (v - u)), v'' = -(nu/d)(u - v),
// from x = 0 with zero slopes and center values (a, b).
Trajectory integrate(const ProblemParams& p, double a, double b, int steps) {
    Trajectory tr;
    tr.step = 1.0 / steps;
    tr.u.reserve(steps + 1);
    tr.up.reserve(steps + 1);
    tr.v.reserve(steps + 1);
    tr.vp.reserve(steps + 1);

    auto deriv = [&](const std::array<double, 4>& y) {
        return std::array<double, 4>{
            y[1], -(p.lambda * g_extended(p.reaction, y[0]) + p.nu * (y[2] - y[0])),
            y[3], -(p.nu / p.d) * (y[0] - y[2])};
    };

    std::array<double, 4> y{a, 0.0, b, 0.0};
    tr.u.push_back(y[0]);
    tr.up.push_back(y[1]);
    tr.v.push_back(y[2]);
    tr.vp.push_back(y[3]);
    const double hs = tr.step;
    for (int j = 0; j < steps; ++j) {
        const auto k1 = deriv(y);
        std::array<double, 4> y2;
        for (int c = 0; c < 4; ++c) y2[c] = y[c] + 0.5 * hs * k1[c];
        const auto k2 = deriv(y2);
        for (int c = 0; c < 4; ++c) y2[c] = y[c] + 0.5 * hs * k2[c];
        const auto k3 = deriv(y2);
        for (int c = 0; c < 4; ++c) y2[c] = y[c] + hs * k3[c];
        const auto k4 = deriv(y2);
        for (int c = 0; c < 4; ++c)
            y[c] += hs / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        tr.u.push_back(y[0]);
        tr.up.push_back(y[1]);
        tr.v.push_back(y[2]);
        tr.vp.push_back(y[3]);
    }
    return tr;
}

double hermite_eval(const std::vector<double>& f, const std::vector<double>& fp, double step,
                    double x) {
    const int last = static_cast<int>(f.size()) - 2;
    int j = static_cast<int>(x / step);
    j = std::clamp(j, 0, last);
    const double t = x / step - j;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f[j] + (t3 - 2 * t2 + t) * step * fp[j] +
           (-2 * t3 + 3 * t2) * f[j + 1] + (t3 - t2) * step * fp[j + 1];
}

}  // namespace

StationaryReport shooting_solve(const ProblemParams& p, const Grid& output_grid, double tol) {
    validate(p);
    StationaryReport rep;
    rep.params = p;
    rep.state.u = make_field(output_grid);
    rep.state.v = make_field(output_grid);

    const int steps = 10000;
    auto boundary = [&](double a, double b) -> std::array<double, 2> {
        Trajectory tr = integrate(p, a, b, steps);
        return {tr.u.back(), tr.v.back()};
    };

    double a = 0.0, b = 0.0;
    auto r = boundary(a, b);
    bool ok = false;
    for (int it = 1; it <= 100; ++it) {
        rep.iterations = it;
        if (!std::isfinite(r[0]) || !std::isfinite(r[1])) break;
        rep.residual = std::max(std::abs(r[0]), std::abs(r[1]));
        if (rep.residual < tol) {
            ok = true;
            break;
        }
        const double ea = 1e-7 * (1.0 + std::abs(a));
        const double eb = 1e-7 * (1.0 + std::abs(b));
        const auto ra = boundary(a + ea, b);
        const auto rb = boundary(a, b + eb);
        const double j00 = (ra[0] - r[0]) / ea, j01 = (rb[0] - r[0]) / eb;
        const double j10 = (ra[1] - r[1]) / ea, j11 = (rb[1] - r[1]) / eb;
        const double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || std::abs(det) < 1e-300) break;
        const double da = (r[0] * j11 - r[1] * j01) / det;
        const double db = (r[1] * j00 - r[0] * j10) / det;
        a -= da;
        b -= db;
        rep.final_increment = std::max(std::abs(da), std::abs(db));
        r = boundary(a, b);
    }
    if (!ok) {
        rep.status = SolveStatus::Diverged;
        return rep;
    }

    Trajectory tr = integrate(p, a, b, steps);
    for (int i = 0; i < output_grid.n; ++i) {
        const double x = std::abs(output_grid.nodes[i]);
        rep.state.u.values[i] = hermite_eval(tr.u, tr.up, tr.step, x);
        rep.state.v.values[i] = hermite_eval(tr.v, tr.vp, tr.step, x);
    }
    rep.status = SolveStatus::Converged;
    rep.residual = std::max(std::abs(r[0]), std::abs(r[1]));
    return rep;
}

Field k_nu_apply(const ProblemParams& p, const Field& f) {
    if (!f.grid) throw std::invalid_argument("k_nu_apply: missing grid");
    const double gamma = p.d / (1.0 + p.d);
    HelmholtzOp op{gamma, p.nu, f.grid};
    Field w = helmholtz_solve(op, f);
    Field out = make_field(*f.grid);
    for (int i = 0; i < f.grid->n; ++i)
        out.values[i] = p.d * (f.values[i] - p.nu * w.values[i]);
    return out;
}

std::pair<double, double> nonlocal_residual(const ProblemParams& p, const TwoPhaseState& s) {
    if (!same_grid(s.u, s.v)) throw std::invalid_argument("nonlocal_residual: grid mismatch");
    const Grid& grid = *s.u.grid;
    const double gamma = p.d / (1.0 + p.d);

    Field gu = make_field(grid);
    for (int i = 0; i < grid.n; ++i)
        gu.values[i] = g_eval(p.reaction, safe_nonneg(s.u.values[i]));

    Field lap_u = neg_laplacian_apply(s.u);
    Field k_gu = k_nu_apply(p, gu);
    double r_reduced = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double rhs = p.lambda / (1.0 + p.d) * (gu.values[i] + k_gu.values[i]);
        r_reduced = std::max(r_reduced, std::abs(lap_u.values[i] - rhs));
    }

    HelmholtzOp op{gamma, p.nu, &grid};
    Field w = helmholtz_solve(op, gu);
    double r_rec = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double v_rec = s.u.values[i] - p.lambda * gamma * w.values[i];
        r_rec = std::max(r_rec, std::abs(s.v.values[i] - v_rec));
    }
    return {r_reduced, r_rec};
}

double nonexistence_bound(const ProblemParams& p, double mu1) {
    validate(p);
    if (!(mu1 > 0.0)) throw std::invalid_argument("nonexistence_bound: mu1 must be > 0");
    const double kappa = p.nu * p.d / (p.nu + mu1 * p.d);
    return mu1 / eta_constant(p.reaction) * (1.0 + kappa);
}

double linearized_principal_eigenvalue(const ProblemParams& p, const TwoPhaseState& s) {
    validate(p);
    if (!same_grid(s.u, s.v))
        throw std::invalid_argument("linearized_principal_eigenvalue: grid mismatch");
    const Grid& grid = *s.u.grid;
    const int n = grid.n;

    // Linearization [[-Lap + nu - lambda g'(u), -nu], [-nu, -d Lap + nu]]; shift
    // by +1 so inverse power iteration is well-posed for eigenvalues >= 0.
    std::vector<double> c1(n);
    for (int i = 0; i < n; ++i)
        c1[i] = p.nu + 1.0 - p.lambda * g_prime(p.reaction, safe_nonneg(s.u.values[i]));

    Field x1 = make_field(grid, 1.0), x2 = make_field(grid, 1.0);
    auto norm2 = [&] { return weighted_dot(grid, x1.values, x1.values) +
                              weighted_dot(grid, x2.values, x2.values); };
    double nrm = std::sqrt(norm2());
    for (int i = 0; i < n; ++i) {
        x1.values[i] /= nrm;
        x2.values[i] /= nrm;
    }

    double mu = 0.0, mu_prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 10000; ++it) {
        auto [y1, y2] = coupled_solve(grid, c1, p.nu + 1.0, p.nu, p.d, x1, x2);
        const double xy = weighted_dot(grid, x1.values, y1.values) +
                          weighted_dot(grid, x2.values, y2.values);
        mu = 1.0 / xy - 1.0;  // Rayleigh quotient of the shifted inverse
        nrm = std::sqrt(weighted_dot(grid, y1.values, y1.values) +
                        weighted_dot(grid, y2.values, y2.values));
        for (int i = 0; i < n; ++i) {
            x1.values[i] = y1.values[i] / nrm;
            x2.values[i] = y2.values[i] / nrm;
        }
        if (std::abs(mu - mu_prev) < 1e-12 * std::max(1.0, std::abs(mu))) return mu;
        mu_prev = mu;
    }
    throw NumericalError("linearized_principal_eigenvalue: iteration cap reached");
}

std::pair<double, double> stationary_residual(const ProblemParams& p, const TwoPhaseState& s) {
    if (!same_grid(s.u, s.v)) throw std::invalid_argument("stationary_residual: grid mismatch");
    const Grid& grid = *s.u.grid;
    Field lap_u = neg_laplacian_apply(s.u);
    Field lap_v = neg_laplacian_apply(s.v);
    double ru = 0.0, rv = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double coupling = p.nu * (s.u.values[i] - s.v.values[i]);
        const double gu = g_eval(p.reaction, safe_nonneg(s.u.values[i]));
        ru = std::max(ru, std::abs(lap_u.values[i] - p.lambda * gu + coupling));
        rv = std::max(rv, std::abs(p.d * lap_v.values[i] - coupling));
    }
    return {ru, rv};
}

}  // namespace gelfand
