#include <doctest.h>

#include <cmath>
#include <random>

#include "gelfand/reaction.hpp"

using namespace gelfand;

TEST_CASE("reaction values: closed forms at pinned points") {
    Reaction e = exponential_reaction();
    CHECK(g_eval(e, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g_eval(e, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(g_prime(e, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

    Reaction p2 = power_reaction(2.0);
    CHECK(g_eval(p2, 3.0) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(g_prime(p2, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("reaction derivative: centered finite-difference check") {
    const double s = 0.7, eps = 1e-5;
    for (const Reaction& r : {exponential_reaction(), power_reaction(2.0), power_reaction(3.5)}) {
        double fd = (g_eval(r, s + eps) - g_eval(r, s - eps)) / (2.0 * eps);
        CHECK(std::abs(fd - g_prime(r, s)) <= 1e-6);
    }
}

TEST_CASE("reaction domain: negative argument rejected") {
    Reaction e = exponential_reaction();
    CHECK_THROWS_AS(g_eval(e, -0.1), std::domain_error);
    CHECK_THROWS_AS(g_prime(e, -1e-3), std::domain_error);
    CHECK_THROWS_AS(phi_antiderivative(e, -0.5), std::domain_error);
}

TEST_CASE("eta constant: exponential family gives e exactly") {
    CHECK(eta_constant(exponential_reaction()) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("eta constant: power family matches the analytic minimum p^p/(p-1)^(p-1)") {
    // min over s>0 of (1+s)^p/s is attained at s = 1/(p-1) with value p^p/(p-1)^{p-1}.
    for (double p : {2.0, 1.5, 2.7, 3.0, 4.25, 6.0}) {
        double analytic = std::pow(p, p) / std::pow(p - 1.0, p - 1.0);
        double numeric = eta_constant(power_reaction(p));
        CHECK(std::abs(numeric - analytic) <= 1e-8 * analytic);
    }
    CHECK(eta_constant(power_reaction(2.0)) == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("eta constant: g(s) >= eta*s on a dense sample of [0,50]") {
    for (const Reaction& r : {exponential_reaction(), power_reaction(2.0), power_reaction(3.5)}) {
        const double eta = eta_constant(r);
        const int samples = 10000;
        for (int k = 0; k <= samples; ++k) {
            double s = 50.0 * k / samples;
            CHECK(g_eval(r, s) >= eta * s * (1.0 - 1e-12) - 1e-12);
        }
    }
}

TEST_CASE("antiderivative term: Phi(0)=0, Phi'= -g") {
    for (const Reaction& r : {exponential_reaction(), power_reaction(2.0), power_reaction(3.5)}) {
        CHECK(phi_antiderivative(r, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
        double prev = 0.0;
        for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            double cur = phi_antiderivative(r, s);
            CHECK(cur < prev);  // strictly decreasing since g > 0
            prev = cur;
            const double eps = 1e-6;
            double fd = (phi_antiderivative(r, s + eps) - phi_antiderivative(r, s - eps)) / (2.0 * eps);
            CHECK(std::abs(fd + g_eval(r, s)) <= 1e-5 * (1.0 + g_eval(r, s)));
        }
    }
}

TEST_CASE("convexity: midpoint value below chord on random pairs") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    for (const Reaction& r : {exponential_reaction(), power_reaction(2.0), power_reaction(5.0)}) {
        for (int trial = 0; trial < 200; ++trial) {
            double s = dist(rng), t = dist(rng);
            double mid = g_eval(r, 0.5 * (s + t));
            double chord = 0.5 * (g_eval(r, s) + g_eval(r, t));
            CHECK(mid <= chord + 1e-12 * (1.0 + chord));
        }
    }
}

TEST_CASE("reaction parsing: tags round-trip and bad tags are rejected") {
    Reaction e = parse_reaction("exp");
    CHECK(e.kind == Reaction::Kind::Exponential);
    CHECK(reaction_tag(e) == "exp");

    Reaction p = parse_reaction("pow:2.5");
    CHECK(p.kind == Reaction::Kind::PowerPlusOne);
    CHECK(p.p == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(parse_reaction(reaction_tag(p)).p == doctest::Approx(2.5).epsilon(1e-14));

    CHECK_THROWS_AS(parse_reaction("gauss"), std::invalid_argument);
    CHECK_THROWS_AS(parse_reaction("pow:abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_reaction("pow:1"), std::invalid_argument);   // needs p > 1
    CHECK_THROWS_AS(parse_reaction("pow:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_reaction(""), std::invalid_argument);
    CHECK_THROWS_AS(power_reaction(1.0), std::invalid_argument);
}
