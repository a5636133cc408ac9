#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <limits>

#include "zemach/quadrature.hpp"

using namespace zemach;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = 3.14159265358979323846;

struct battery_case {
    const char* name;
    double exact;
    bool semi_infinite;
    double a, b;
    double (*f)(double);
};

// Known integrals with closed forms, mixing smooth, endpoint-singular,
// oscillatory, peaked, and semi-infinite behaviour.
const battery_case battery[] = {
    {"int_0^1 x^2 = 1/3", 1.0 / 3.0, false, 0.0, 1.0,
     [](double x) { return x * x; }},
    {"int_0^pi sin = 2", 2.0, false, 0.0, pi,
     [](double x) { return std::sin(x); }},
    {"int_0^1 1/sqrt(x) = 2", 2.0, false, 0.0, 1.0,
     [](double x) { return 1.0 / std::sqrt(x); }},
    {"int_0^1 ln(x) = -1", -1.0, false, 0.0, 1.0,
     [](double x) { return std::log(x); }},
    {"int_0^1 1/(1e-4+x^2) = 100 atan(100)", 156.07966601082316, false, 0.0,
     1.0, [](double x) { return 1.0 / (1e-4 + x * x); }},
    {"int_0^2pi cos^2(10x) = pi", pi, false, 0.0, 2.0 * pi,
     [](double x) { return std::cos(10.0 * x) * std::cos(10.0 * x); }},
    {"int_0^inf exp(-x) = 1", 1.0, true, 0.0, 0.0,
     [](double x) { return std::exp(-x); }},
    {"int_0^inf x exp(-x) = 1", 1.0, true, 0.0, 0.0,
     [](double x) { return x * std::exp(-x); }},
    {"int_0^inf 1/(1+x^2) = pi/2", pi / 2.0, true, 0.0, 0.0,
     [](double x) { return 1.0 / (1.0 + x * x); }},
    {"int_0^inf x^2 exp(-x^2) = sqrt(pi)/4", 0.44311346272637897, true, 0.0,
     0.0, [](double x) { return x * x * std::exp(-x * x); }},
    {"int_0^inf exp(-x)/sqrt(x) = sqrt(pi)", 1.7724538509055159, true, 0.0,
     0.0, [](double x) { return std::exp(-x) / std::sqrt(x); }},
    {"dipole bracket = -35pi/(32 sqrt(0.71))", -4.077920589309135, true, 0.0,
     0.0,
     [](double k) {
         const double t = 1.0 + k * k / 0.71;
         return (1.0 / (t * t * t * t) - 1.0) / (k * k);
     }},
};

quadrature_result run_case(const battery_case& c, const quad_options& opt) {
    return c.semi_infinite ? integrate_semi_infinite(c.f, opt)
                           : integrate_finite(c.f, c.a, c.b, opt);
}

} // namespace

TEST_CASE("battery of known integrals converges with honest error estimates",
          "[quadrature]") {
    quad_options opt;
    opt.epsrel = 1e-10;
    for (const auto& c : battery) {
        INFO(c.name);
        const quadrature_result r = run_case(c, opt);
        REQUIRE(r.converged);
        const double true_err = std::fabs(r.value - c.exact);
        // the honesty contract: the reported estimate bounds the true error
        // to within a factor of 10
        REQUIRE(true_err <= 10.0 * r.error_estimate);
        REQUIRE_THAT(r.value, WithinRel(c.exact, 1e-8));
        REQUIRE(r.evaluations > 0);
        REQUIRE(r.evaluations <= opt.max_evaluations);
    }
}

TEST_CASE("quadrature is deterministic bit for bit", "[quadrature]") {
    quad_options opt;
    opt.epsrel = 1e-12;
    auto f = [](double x) { return std::exp(-x) / std::sqrt(x); };
    const quadrature_result a = integrate_semi_infinite(f, opt);
    const quadrature_result b = integrate_semi_infinite(f, opt);
    REQUIRE(std::memcmp(&a.value, &b.value, sizeof(double)) == 0);
    REQUIRE(std::memcmp(&a.error_estimate, &b.error_estimate,
                        sizeof(double)) == 0);
    REQUIRE(a.evaluations == b.evaluations);
}

TEST_CASE("linearity and interval additivity", "[quadrature]") {
    quad_options opt;
    opt.epsrel = 1e-12;
    auto f = [](double x) { return std::sin(x); };
    auto g = [](double x) { return x * x; };
    auto combo = [&](double x) { return 3.0 * f(x) - 2.0 * g(x); };

    const double If = integrate_finite(f, 0.0, 2.0, opt).value;
    const double Ig = integrate_finite(g, 0.0, 2.0, opt).value;
    const double Ic = integrate_finite(combo, 0.0, 2.0, opt).value;
    REQUIRE_THAT(Ic, WithinRel(3.0 * If - 2.0 * Ig, 1e-11));

    const double left = integrate_finite(g, 0.0, 1.0, opt).value;
    const double right = integrate_finite(g, 1.0, 2.0, opt).value;
    REQUIRE_THAT(left + right, WithinRel(Ig, 1e-12));
}

TEST_CASE("absolute-tolerance mode handles zero-mean integrands",
          "[quadrature]") {
    quad_options opt;
    opt.epsrel = 0.0;
    opt.epsabs = 1e-10;
    const quadrature_result r = integrate_finite(
        [](double x) { return std::cos(10.0 * x); }, 0.0, 2.0 * pi, opt);
    REQUIRE(r.converged);
    REQUIRE_THAT(r.value, WithinAbs(0.0, 1e-10));
}

TEST_CASE("non-finite integrand values raise a failure naming the abscissa",
          "[quadrature]") {
    auto bad = [](double x) {
        return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    };
    bool caught = false;
    try {
        integrate_finite(bad, 0.0, 1.0, {});
    } catch (const quadrature_failure& e) {
        caught = true;
        REQUIRE(e.abscissa > 0.5);
        REQUIRE(e.abscissa < 1.0);
        REQUIRE_THAT(e.what(), ContainsSubstring("non-finite"));
        char expected[64];
        std::snprintf(expected, sizeof(expected), "%.17g", e.abscissa);
        REQUIRE_THAT(e.what(), ContainsSubstring(expected));
    }
    REQUIRE(caught);

    auto inf = [](double) { return std::numeric_limits<double>::infinity(); };
    REQUIRE_THROWS_AS(integrate_finite(inf, 0.0, 1.0, {}),
                      quadrature_failure);
}

TEST_CASE("an exhausted evaluation budget comes back as non-convergence, "
          "not an exception",
          "[quadrature]") {
    quad_options opt;
    opt.epsrel = 1e-14;
    opt.max_evaluations = 3000;
    // highly oscillatory near zero; 3000 evaluations cannot resolve it to
    // 1e-14
    const quadrature_result r = integrate_finite(
        [](double x) { return std::sin(1.0 / x); }, 1e-8, 1.0, opt);
    REQUIRE_FALSE(r.converged);
    REQUIRE(r.evaluations <= opt.max_evaluations);
    REQUIRE(r.error_estimate > 0.0);
    // the partial value is still in the right neighbourhood
    REQUIRE_THAT(r.value, WithinAbs(0.504, 0.05));
}

TEST_CASE("argument validation", "[quadrature]") {
    auto f = [](double x) { return x; };
    REQUIRE_THROWS_AS(integrate_finite(f, 1.0, 1.0, {}), zemach::error);
    REQUIRE_THROWS_AS(integrate_finite(f, 2.0, 1.0, {}), zemach::error);
    quad_options opt;
    opt.epsrel = 0.0;
    opt.epsabs = 0.0;
    REQUIRE_THROWS_AS(integrate_finite(f, 0.0, 1.0, opt), zemach::error);
}

TEST_CASE("semi-infinite map never evaluates the endpoints", "[quadrature]") {
    // f is singular at exactly x = 0; interior-only nodes must avoid it
    auto f = [](double x) { return std::exp(-x) / std::sqrt(x); };
    const quadrature_result r = integrate_semi_infinite(f, {});
    REQUIRE(r.converged);
    REQUIRE_THAT(r.value, WithinRel(1.7724538509055159, 1e-9));
}
