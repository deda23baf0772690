#include "gelfand/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gelfand {

namespace {

// LU factorization of a symmetric tridiagonal (-a*Lap_h + diag(c)); no pivoting.
// `positive` records whether all pivots stayed positive (i.e. the matrix is SPD).
struct TridiagFactor {
    std::vector<double> diag;   // eliminated diagonal
    std::vector<double> lower;  // multipliers
    double off = 0.0;           // constant super/sub-diagonal entry, -a/h^2
    bool positive = true;

    TridiagFactor(const Grid& g, double a, double c) {
        factor(g, a, std::vector<double>(g.n, c));
    }
    TridiagFactor(const Grid& g, double a, const std::vector<double>& c) { factor(g, a, c); }

    void factor(const Grid& g, double a, const std::vector<double>& c) {
        const double inv_h2 = 1.0 / (g.h * g.h);
        off = -a * inv_h2;
        diag.resize(g.n);
        lower.assign(g.n, 0.0);
        diag[0] = 2.0 * a * inv_h2 + c[0];
        positive = diag[0] > 0.0;
        for (int i = 1; i < g.n; ++i) {
            lower[i] = off / diag[i - 1];
            diag[i] = 2.0 * a * inv_h2 + c[i] - lower[i] * off;
            positive = positive && diag[i] > 0.0;
        }
    }

    void solve(const std::vector<double>& rhs, std::vector<double>& x) const {
        const int n = static_cast<int>(diag.size());
        x.resize(n);
        x[0] = rhs[0];
        for (int i = 1; i < n; ++i) x[i] = rhs[i] - lower[i] * x[i - 1];
        x[n - 1] /= diag[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = (x[i] - off * x[i + 1]) / diag[i];
    }
};

void apply_neg_lap(const Grid& g, const std::vector<double>& v, std::vector<double>& out) {
    const double inv_h2 = 1.0 / (g.h * g.h);
    const int n = g.n;
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        const double left = (i > 0) ? v[i - 1] : 0.0;
        const double right = (i + 1 < n) ? v[i + 1] : 0.0;
        out[i] = (-left + 2.0 * v[i] - right) * inv_h2;
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Smallest Dirichlet eigenvalue of -Lap_h, exact for the sine eigenvectors.
double mu1_exact(const Grid& g) {
    const double s = std::sin(0.25 * 3.14159265358979323846 * g.h);
    return 4.0 / (g.h * g.h) * s * s;
}

}  // namespace

Field helmholtz_solve(const HelmholtzOp& op, const Field& rhs) {
    if (!op.grid || !rhs.grid) throw std::invalid_argument("helmholtz_solve: missing grid");
    if (op.grid->n != rhs.grid->n || op.grid->h != rhs.grid->h)
        throw std::invalid_argument("helmholtz_solve: grid mismatch");
    if (!(op.a > 0.0) || op.c < 0.0) throw std::invalid_argument("helmholtz_solve: need a > 0, c >= 0");
    TridiagFactor fac(*op.grid, op.a, op.c);
    Field x = make_field(*op.grid);
    fac.solve(rhs.values, x.values);
    return x;
}

std::pair<Field, Field> coupled_solve(const Grid& grid, const std::vector<double>& c1,
                                      double c2, double nu, double d,
                                      const Field& f, const Field& g) {
    const int n = grid.n;
    if (static_cast<int>(c1.size()) != n) throw std::invalid_argument("coupled_solve: c1 size mismatch");
    if (!f.grid || !g.grid || f.grid->n != n || g.grid->n != n)
        throw std::invalid_argument("coupled_solve: grid mismatch");

    TridiagFactor second_row(grid, d, c2);  // (-d Lap_h + c2 I), SPD for c2 >= 0
    if (!second_row.positive) throw std::invalid_argument("coupled_solve: second row not SPD");

    // Schur complement S = -Lap_h + diag(c1) - nu^2 (-d Lap_h + c2)^{-1},
    // applied matrix-free.
    std::vector<double> tmp(n), tmp2(n);
    auto apply_schur = [&](const std::vector<double>& x, std::vector<double>& out) {
        apply_neg_lap(grid, x, out);
        for (int i = 0; i < n; ++i) out[i] += c1[i] * x[i];
        second_row.solve(x, tmp2);
        for (int i = 0; i < n; ++i) out[i] -= nu * nu * tmp2[i];
    };

    // Preconditioner -Lap_h + diag(c1 - s), s = nu^2/(d mu1 + c2): the Schur
    // symbol at the lowest frequency. The ratio of symbols stays in [1, 1+d] over
    // the whole spectrum, so PCG converges in a handful of iterations. Fall back
    // to plain -Lap_h if the shifted diagonal destroys positivity.
    const double shift = nu * nu / (d * mu1_exact(grid) + c2);
    std::vector<double> pc_diag(n);
    for (int i = 0; i < n; ++i) pc_diag[i] = c1[i] - shift;
    TridiagFactor precon(grid, 1.0, pc_diag);
    if (!precon.positive) precon.factor(grid, 1.0, std::vector<double>(n, 0.0));

    // Reduced right-hand side f + nu (-d Lap_h + c2)^{-1} g.
    std::vector<double> b(n);
    second_row.solve(g.values, tmp);
    for (int i = 0; i < n; ++i) b[i] = f.values[i] + nu * tmp[i];

    std::vector<double> x(n, 0.0), r = b, z(n), p(n), Ap(n);
    const double tol2 = 1e-24 * dot(b, b);  // relative residual 1e-12
    double r_norm2 = dot(r, r);
    if (r_norm2 > 0.0) {
        precon.solve(r, z);
        p = z;
        double rz = dot(r, z);
        const int cap = 10 * n;
        bool done = false;
        for (int it = 0; it < cap && !done; ++it) {
            apply_schur(p, Ap);
            const double pAp = dot(p, Ap);
            if (!(pAp > 0.0)) throw NumericalError("coupled_solve: CG breakdown (operator not SPD)");
            const double alpha = rz / pAp;
            for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
            for (int i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
            r_norm2 = dot(r, r);
            if (r_norm2 <= tol2) {
                done = true;
                break;
            }
            precon.solve(r, z);
            const double rz_new = dot(r, z);
            if (!(rz_new > 0.0))
                throw NumericalError("coupled_solve: preconditioner breakdown");
            const double beta = rz_new / rz;
            rz = rz_new;
            for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
        if (!done)
            throw NumericalError("coupled_solve: CG did not converge in " +
                                 std::to_string(10 * n) + " iterations");
    }

    Field phi = make_field(grid), psi = make_field(grid);
    phi.values = std::move(x);
    for (int i = 0; i < n; ++i) tmp[i] = nu * phi.values[i] + g.values[i];
    second_row.solve(tmp, psi.values);
    return {std::move(phi), std::move(psi)};
}

std::pair<Field, Field> block_solve(const BlockOp& op, const Field& f, const Field& g) {
    if (!op.grid) throw std::invalid_argument("block_solve: missing grid");
    if (!(op.nu > 0.0) || !(op.d > 0.0)) throw std::invalid_argument("block_solve: need nu, d > 0");
    std::vector<double> c1(op.grid->n, op.nu);
    return coupled_solve(*op.grid, c1, op.nu, op.nu, op.d, f, g);
}

std::pair<double, Field> principal_eigenpair(const Grid& grid) {
    const int n = grid.n;
    TridiagFactor lap(grid, 1.0, 0.0);

    std::vector<double> x(n, 1.0), y(n), res(n);
    double norm = std::sqrt(dot(x, x));
    for (double& v : x) v /= norm;

    double mu = 0.0, mu_prev = -1.0;
    const int cap = 10000;
    bool value_settled = false;
    for (int it = 0;; ++it) {
        if (it == cap) throw NumericalError("principal_eigenpair: iteration cap reached");
        lap.solve(x, y);
        mu = dot(x, x) / dot(x, y);  // Rayleigh quotient of the inverse iterate
        norm = std::sqrt(dot(y, y));
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (std::abs(mu - mu_prev) < 1e-12) value_settled = true;
        mu_prev = mu;
        if (value_settled) {
            // Keep polishing until the eigen-residual matches the value accuracy.
            // The returned vector is rescaled to h-weighted L1 norm 1 below, which
            // divides the defect by that norm, so gate on the rescaled defect.
            apply_neg_lap(grid, x, res);
            double r = 0.0;
            for (int i = 0; i < n; ++i) r = std::max(r, std::abs(res[i] - mu * x[i]));
            if (r < 1e-10 * mu * weighted_l1(grid, x)) break;
        }
    }

    Field phi = make_field(grid);
    phi.values = x;
    // Perron eigenvector: fix the sign positive, normalize h-weighted L1 to 1.
    if (phi.values[n / 2] < 0.0)
        for (double& v : phi.values) v = -v;
    const double l1 = weighted_l1(grid, phi.values);
    for (double& v : phi.values) v /= l1;
    return {mu, std::move(phi)};
}

}  // namespace gelfand
