// Uniform 1D grid on the slab (-1,1) with homogeneous Dirichlet boundary.
// Only interior node values are stored; boundary values are implicitly zero,
// so every linear operator acts on R^n and stays symmetric positive definite.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gelfand {

struct Grid {
    int n = 0;                  // number of interior nodes
    double h = 0.0;             // spacing, h*(n+1) == 2
    std::vector<double> nodes;  // x_i = -1 + (i+1)*h, strictly inside (-1,1)
};

// n >= 3 required; throws std::invalid_argument otherwise.
Grid build_grid(int n);

struct Field {
    const Grid* grid = nullptr;
    std::vector<double> values;  // length grid->n, interior values only
};

Field make_field(const Grid& g, double fill = 0.0);

inline bool same_grid(const Field& a, const Field& b) {
    return a.grid && b.grid && a.grid->n == b.grid->n && a.grid->h == b.grid->h;
}

// Second-order stencil (-f_{i-1} + 2 f_i - f_{i+1}) / h^2 with zero boundary.
// Exact on polynomials of degree <= 3.
Field neg_laplacian_apply(const Field& f);

// Norms and inner products used throughout; the weighted ones carry the cell
// width h so they are consistent with their continuum counterparts.
double sup_norm(const std::vector<double>& v);
double weighted_l1(const Grid& g, const std::vector<double>& v);
double weighted_l2(const Grid& g, const std::vector<double>& v);
double weighted_dot(const Grid& g, const std::vector<double>& a, const std::vector<double>& b);
bool all_finite(const std::vector<double>& v);

}  // namespace gelfand
