#include <doctest.h>

#include <cmath>
#include <vector>

#include "gelfand/continuation.hpp"
#include "gelfand/grid.hpp"
#include "gelfand/linsolve.hpp"
#include "gelfand/stationary.hpp"

using namespace gelfand;

namespace {

ProblemParams params(double lambda, double nu, double d = 1.0,
                     Reaction r = exponential_reaction()) {
    ProblemParams p;
    p.lambda = lambda;
    p.nu = nu;
    p.d = d;
    p.reaction = r;
    return p;
}

}  // namespace

TEST_CASE("critical value at nu = 5 and its certified bracket") {
    Grid g = build_grid(99);
    CriticalResult r = find_lambda_star(5.0, 1.0, exponential_reaction(), g);
    REQUIRE(r.ok);
    CHECK(std::abs(r.lambda_star - 1.468) < 0.01);
    CHECK(r.bracket_width <= 1e-4 * (1.0 + 1e-12));
    CHECK(r.evaluations >= 10);
    CHECK(r.nu == 5.0);

    // bracket certificate: converged strictly below, not converged strictly above
    StationaryReport below =
        monotone_iterate(params(r.lambda_star - r.bracket_width, 5.0), g, 1e-10, 40000);
    CHECK(below.status == SolveStatus::Converged);
    StationaryReport above =
        monotone_iterate(params(r.lambda_star + r.bracket_width, 5.0), g, 1e-10, 10000);
    CHECK(above.status != SolveStatus::Converged);
}

TEST_CASE("critical value approaches the decoupled limit as nu -> 0") {
    Grid g = build_grid(199);
    CriticalResult r = find_lambda_star(1e-3, 1.0, exponential_reaction(), g);
    REQUIRE(r.ok);
    CHECK(std::abs(r.lambda_star - 0.878) < 0.01);
}

TEST_CASE("critical value approaches (1+d) times the classical value as nu -> infinity") {
    Grid g = build_grid(199);
    CriticalResult r = find_lambda_star(1e4, 1.0, exponential_reaction(), g);
    REQUIRE(r.ok);
    CHECK(std::abs(r.lambda_star - 1.757) < 0.02);

    Grid coarse = build_grid(99);
    CriticalResult r3 = find_lambda_star(1e4, 3.0, exponential_reaction(), coarse);
    REQUIRE(r3.ok);
    double classical = classical_lambda_star(exponential_reaction(), coarse);
    CHECK(std::abs(r3.lambda_star - 4.0 * classical) < 0.05);
    CHECK(std::abs(r3.lambda_star - 3.514) < 0.05);
}

TEST_CASE("critical curve: nondecreasing sweep between the two limits") {
    Grid g = build_grid(49);
    std::vector<double> nus = {0.01, 0.1, 1.0, 5.0, 10.0, 100.0};
    SweepResult sweep = sweep_nu(nus, 1.0, exponential_reaction(), g);
    REQUIRE(sweep.entries.size() == nus.size());
    double prev = 0.0;
    for (size_t i = 0; i < sweep.entries.size(); ++i) {
        const CriticalResult& e = sweep.entries[i];
        REQUIRE(e.ok);
        CHECK(e.nu == nus[i]);
        CHECK(e.lambda_star >= prev - 2.0 * e.bracket_width);
        prev = std::max(prev, e.lambda_star);
    }
    CHECK(std::abs(sweep.entries.front().lambda_star - 0.88) < 0.01);
    CHECK(sweep.entries.back().lambda_star < 1.76);

    // two-sided pinch: classical value below, (1+d) * classical + slack above,
    // and the analytic nonexistence bound above each entry
    double classical = classical_lambda_star(exponential_reaction(), g);
    auto [mu1, phi1] = principal_eigenpair(g);
    for (const CriticalResult& e : sweep.entries) {
        CHECK(e.lambda_star >= classical - 2.0 * e.bracket_width);
        CHECK(e.lambda_star <= 2.0 * classical + 0.01);
        CHECK(e.lambda_star <= nonexistence_bound(params(1.0, e.nu), mu1) + e.bracket_width);
    }
}

TEST_CASE("sweep: single-element sweep equals the direct call, workers do not change results") {
    Grid g = build_grid(49);
    CriticalResult direct = find_lambda_star(5.0, 1.0, exponential_reaction(), g);
    SweepResult single = sweep_nu({5.0}, 1.0, exponential_reaction(), g);
    REQUIRE(single.entries.size() == 1);
    CHECK(single.entries[0].lambda_star == direct.lambda_star);
    CHECK(single.entries[0].bracket_width == direct.bracket_width);
    CHECK(single.entries[0].evaluations == direct.evaluations);

    std::vector<double> nus = log_spaced(0.1, 100.0, 6);
    SweepResult serial = sweep_nu(nus, 1.0, exponential_reaction(), g, 1e-4, 1);
    SweepResult threaded = sweep_nu(nus, 1.0, exponential_reaction(), g, 1e-4, 3);
    REQUIRE(serial.entries.size() == threaded.entries.size());
    for (size_t i = 0; i < serial.entries.size(); ++i) {
        CHECK(serial.entries[i].lambda_star == threaded.entries[i].lambda_star);
        CHECK(serial.entries[i].bracket_width == threaded.entries[i].bracket_width);
        CHECK(serial.entries[i].evaluations == threaded.entries[i].evaluations);
    }
}

TEST_CASE("classical critical value: pinned value, decoupled-limit agreement, rescaling") {
    Grid g = build_grid(199);
    double classical = classical_lambda_star(exponential_reaction(), g);
    CHECK(std::abs(classical - 0.878) < 0.005);

    CriticalResult tiny_nu = find_lambda_star(1e-4, 1.0, exponential_reaction(), g);
    REQUIRE(tiny_nu.ok);
    CHECK(std::abs(tiny_nu.lambda_star - classical) < 0.01);

    // halving the reaction doubles the critical multiplier
    double halved = classical_lambda_star(exponential_reaction(), g, 1e-4, 0.5);
    CHECK(std::abs(halved - 2.0 * classical) < 3e-4);

    // power reaction reference: scalar critical value for g = (1+s)^2 is
    // analytically below mu1/eta = mu1/4 and above mu1/eta/2 (existence range)
    Grid coarse = build_grid(99);
    double pow_classical = classical_lambda_star(power_reaction(2.0), coarse);
    auto [mu1, phi1] = principal_eigenpair(coarse);
    CHECK(pow_classical < mu1 / 4.0);
    CHECK(pow_classical > mu1 / 8.0);
}

TEST_CASE("critical value: grid convergence") {
    Grid g199 = build_grid(199);
    Grid g399 = build_grid(399);
    CriticalResult a = find_lambda_star(5.0, 1.0, exponential_reaction(), g199);
    CriticalResult b = find_lambda_star(5.0, 1.0, exponential_reaction(), g399);
    REQUIRE(a.ok);
    REQUIRE(b.ok);
    CHECK(std::abs(a.lambda_star - b.lambda_star) < 5e-3);
}

TEST_CASE("log-spaced samples: endpoints, ordering, constant ratio") {
    std::vector<double> v = log_spaced(1e-2, 1e4, 25);
    REQUIRE(v.size() == 25);
    CHECK(v.front() == 1e-2);
    CHECK(v.back() == 1e4);
    double ratio = v[1] / v[0];
    for (size_t i = 1; i < v.size(); ++i) {
        CHECK(v[i] > v[i - 1]);
        CHECK(v[i] / v[i - 1] == doctest::Approx(ratio).epsilon(1e-12));
    }
    std::vector<double> one = log_spaced(3.0, 7.0, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 3.0);
    CHECK_THROWS_AS(log_spaced(-1.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced(1.0, 2.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced(2.0, 1.0, 5), std::invalid_argument);
}
