#include "gelfand/grid.hpp"

#include <algorithm>

namespace gelfand {

Grid build_grid(int n) {
    if (n < 3) throw std::invalid_argument("build_grid: need at least 3 interior nodes");
    Grid g;
    g.n = n;
    g.h = 2.0 / (n + 1);
    g.nodes.resize(n);
    for (int i = 0; i < n; ++i) g.nodes[i] = -1.0 + (i + 1) * g.h;
    return g;
}

Field make_field(const Grid& g, double fill) {
    Field f;
    f.grid = &g;
    f.values.assign(g.n, fill);
    return f;
}

Field neg_laplacian_apply(const Field& f) {
    if (!f.grid) throw std::invalid_argument("neg_laplacian_apply: field has no grid");
    const Grid& g = *f.grid;
    const double inv_h2 = 1.0 / (g.h * g.h);
    Field out = make_field(g);
    const auto& v = f.values;
    for (int i = 0; i < g.n; ++i) {
        const double left = (i > 0) ? v[i - 1] : 0.0;
        const double right = (i + 1 < g.n) ? v[i + 1] : 0.0;
        out.values[i] = (-left + 2.0 * v[i] - right) * inv_h2;
    }
    return out;
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double weighted_l1(const Grid& g, const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return g.h * s;
}

double weighted_l2(const Grid& g, const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(g.h * s);
}

double weighted_dot(const Grid& g, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return g.h * s;
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace gelfand
