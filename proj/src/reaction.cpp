#include "gelfand/reaction.hpp"

#include <cmath>
#include <cstdio>

namespace gelfand {

namespace {

void require_nonnegative(double s) {
    if (s < 0.0) throw std::domain_error("reaction: negative argument (solver bug)");
}

// Golden-section minimum of f(exp(t)) on t in [lo, hi]; the log coordinate keeps
// the bracket robust for minimizers anywhere in (0, inf).
template <typename F>
double golden_min_log(F f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(std::exp(c)), fd = f(std::exp(d));
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(std::exp(d));
        }
    }
    return std::exp(0.5 * (a + b));
}

}  // namespace

Reaction power_reaction(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("power_reaction: exponent must exceed 1");
    return {Reaction::Kind::PowerPlusOne, p};
}

double g_eval(const Reaction& r, double s) {
    require_nonnegative(s);
    if (r.kind == Reaction::Kind::Exponential) return std::exp(s);
    return std::pow(1.0 + s, r.p);
}

double g_prime(const Reaction& r, double s) {
    require_nonnegative(s);
    if (r.kind == Reaction::Kind::Exponential) return std::exp(s);
    return r.p * std::pow(1.0 + s, r.p - 1.0);
}

double phi_antiderivative(const Reaction& r, double s) {
    require_nonnegative(s);
    if (r.kind == Reaction::Kind::Exponential) return -(std::exp(s) - 1.0);
    return -(std::pow(1.0 + s, r.p + 1.0) - 1.0) / (r.p + 1.0);
}

double eta_constant(const Reaction& r) {
    if (r.kind == Reaction::Kind::Exponential) {
        // min of e^s / s sits at s = 1
        return std::exp(1.0);
    }
    const double p = r.p;
    auto ratio = [p](double s) { return std::pow(1.0 + s, p) / s; };
    const double s_min = golden_min_log(ratio, std::log(1e-9), std::log(1e9), 1e-10);
    return ratio(s_min);
}

Reaction parse_reaction(const std::string& tag) {
    if (tag == "exp") return exponential_reaction();
    if (tag.rfind("pow:", 0) == 0) {
        size_t used = 0;
        double p = 0.0;
        try {
            p = std::stod(tag.substr(4), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("reaction: cannot parse exponent in '" + tag + "'");
        }
        if (used != tag.size() - 4) throw std::invalid_argument("reaction: trailing characters in '" + tag + "'");
        return power_reaction(p);
    }
    throw std::invalid_argument("reaction: unknown selector '" + tag + "' (use exp or pow:<p>)");
}

std::string reaction_tag(const Reaction& r) {
    if (r.kind == Reaction::Kind::Exponential) return "exp";
    char buf[48];
    std::snprintf(buf, sizeof buf, "pow:%.12g", r.p);
    return buf;
}

}  // namespace gelfand
