// Catalog of reaction nonlinearities: convex, nondecreasing, g(0) > 0, with
// finite \int ds/g(s). Two families: g(s) = e^s and g(s) = (1+s)^p, p > 1.
#pragma once

#include <stdexcept>
#include <string>

namespace gelfand {

struct Reaction {
    enum class Kind { Exponential, PowerPlusOne };
    Kind kind = Kind::Exponential;
    double p = 0.0;  // exponent, only meaningful for PowerPlusOne (p > 1)
};

inline Reaction exponential_reaction() { return {Reaction::Kind::Exponential, 0.0}; }
Reaction power_reaction(double p);

// Solutions are nonnegative by the comparison principle; a negative argument
// signals a solver bug, so these throw std::domain_error for s < 0.
double g_eval(const Reaction& r, double s);
double g_prime(const Reaction& r, double s);

// Antiderivative term of the energy functional: Phi(s) = -\int_0^s g.
double phi_antiderivative(const Reaction& r, double s);

// Largest eta with g(s) >= eta*s for all s >= 0. Closed form e for the
// exponential family; bracketed golden-section minimization of g(s)/s for
// the power family.
double eta_constant(const Reaction& r);

// CLI selector strings: "exp" | "pow:<p>".
Reaction parse_reaction(const std::string& tag);
std::string reaction_tag(const Reaction& r);

inline bool same_reaction(const Reaction& a, const Reaction& b) {
    return a.kind == b.kind && (a.kind == Reaction::Kind::Exponential || a.p == b.p);
}

}  // namespace gelfand
