#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "zemach/quadrature.hpp"
#include "zemach/radius.hpp"

using namespace zemach;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const constant_set& pinned() {
    static const constant_set set = load_constants("codata-pinned");
    return set;
}

} // namespace

TEST_CASE("momentum-route radii of the bundled models are pinned",
          "[radius]") {
    const auto& set = pinned();

    SECTION("dipole") {
        const auto r = zemach_radius_momentum(dipole{0.71}, set, 1e-10, "dipole");
        REQUIRE_THAT(r.radius.value, WithinAbs(1.0245551794, 1e-6));
        REQUIRE(r.radius.u == unit::fm);
        REQUIRE(r.radius.sigma == r.quadrature_error);
        REQUIRE(r.quadrature_error < 1e-8);
        REQUIRE(r.method == zemach_method::momentum);
        REQUIRE(r.model_id == "dipole");
        REQUIRE_FALSE(r.beyond_validity_reached);
    }
    SECTION("monopole fit") {
        const loaded_model lm = load_model("simon");
        const auto r = zemach_radius_momentum(lm.model, set, 1e-10, lm.id);
        REQUIRE_THAT(r.radius.value, WithinAbs(1.0668363505, 1e-6));
        REQUIRE(r.quadrature_error < 1e-8);
        REQUIRE_FALSE(r.beyond_validity_reached);
    }
    SECTION("ratio hybrids bracket the base fit and flag the dropped tail") {
        const auto re = zemach_radius_momentum(
            load_model("simon-ratio-electric").model, set, 1e-10);
        const auto rm = zemach_radius_momentum(
            load_model("simon-ratio-magnetic").model, set, 1e-10);
        REQUIRE_THAT(re.radius.value, WithinAbs(1.0693028909, 1e-6));
        REQUIRE_THAT(rm.radius.value, WithinAbs(1.0642397710, 1e-6));
        REQUIRE(re.beyond_validity_reached);
        REQUIRE(rm.beyond_validity_reached);
        // keeping G_E and dividing by a ratio < 1 inflates G_M, and vice versa
        const auto base = zemach_radius_momentum(load_model("simon").model,
                                                 set, 1e-10);
        REQUIRE(re.radius.value > base.radius.value);
        REQUIRE(rm.radius.value < base.radius.value);
    }
}

TEST_CASE("analytic dipole closed form matches the quadrature to high "
          "accuracy",
          "[radius]") {
    const auto& set = pinned();
    const double hbar_c_gev_fm = set.value("hbar_c") * 1e-3;
    for (double lambda2 : {0.3, 0.5, 0.71, 1.0, 1.5, 2.0}) {
        INFO("lambda2 = " << lambda2);
        const auto exact = zemach_radius_dipole_analytic(lambda2, set);
        const auto quad =
            zemach_radius_momentum(dipole{lambda2}, set, 1e-12);
        REQUIRE_THAT(quad.radius.value, WithinRel(exact.radius.value, 1e-9));
        // scaling law: R * sqrt(lambda2) is the fixed constant 35/8 * hbar_c
        REQUIRE_THAT(exact.radius.value * std::sqrt(lambda2),
                     WithinRel(35.0 / 8.0 * hbar_c_gev_fm, 1e-14));
        REQUIRE(exact.quadrature_error == 0.0);
        REQUIRE(exact.method == zemach_method::analytic);
    }
}

TEST_CASE("momentum- and coordinate-space routes agree", "[radius]") {
    const auto& set = pinned();
    for (const char* name : {"dipole", "simon"}) {
        const loaded_model lm = load_model(name);
        const auto p = zemach_radius_momentum(lm.model, set, 1e-10);
        const auto x = zemach_radius_coordinate(lm.model, set, 1e-10);
        INFO("model " << lm.id << ": momentum " << p.radius.value
                      << ", coordinate " << x.radius.value);
        REQUIRE(x.method == zemach_method::coordinate);
        REQUIRE_THAT(x.radius.value, WithinAbs(p.radius.value, 1e-7));
    }
}

TEST_CASE("coordinate route from explicit densities", "[radius]") {
    const auto& set = pinned();
    constexpr double pi = 3.14159265358979323846;

    // exponential density with decay constant L: the convolution integral has
    // the closed form R = 35/(8L) when both sides share the same L
    auto exponential = [&](double L, ff_side side) {
        const double norm = L * L * L / (8.0 * pi);
        const double rmax = std::log(norm / 1e-30) / L;
        return density_profile{
            side, [L, norm](double r) { return norm * std::exp(-L * r); },
            rmax};
    };

    SECTION("equal decay constants reproduce 35/(8L)") {
        const auto pe = exponential(3.0, ff_side::electric);
        const auto pm = exponential(3.0, ff_side::magnetic);
        const auto r = zemach_radius_coordinate_densities(pe, pm, 1e-10);
        REQUIRE_THAT(r.radius.value, WithinRel(35.0 / 24.0, 1e-8));
    }
    SECTION("the functional is symmetric under swapping the two densities") {
        const auto a = exponential(3.0, ff_side::electric);
        const auto b = exponential(2.0, ff_side::magnetic);
        const auto r1 = zemach_radius_coordinate_densities(a, b, 1e-10);
        const auto r2 = zemach_radius_coordinate_densities(b, a, 1e-10);
        REQUIRE_THAT(r1.radius.value, WithinRel(r2.radius.value, 1e-8));
    }
    SECTION("tolerance must be positive") {
        const auto p = exponential(3.0, ff_side::electric);
        REQUIRE_THROWS_AS(zemach_radius_coordinate_densities(p, p, 0.0),
                          error);
    }
}

TEST_CASE("convolution kernel", "[radius]") {
    REQUIRE(zemach_kernel(0.0, 0.0) == 0.0);
    REQUIRE(zemach_kernel(2.0, 0.0) == 2.0);
    REQUIRE(zemach_kernel(0.0, 2.0) == 2.0);
    REQUIRE_THAT(zemach_kernel(3.0, 3.0), WithinRel(4.0, 1e-15));
    REQUIRE_THAT(zemach_kernel(3.0, 1.0), WithinRel(3.0 + 1.0 / 9.0, 1e-15));
    for (double u : {0.1, 1.0, 2.5})
        for (double v : {0.3, 1.7, 4.0})
            REQUIRE(zemach_kernel(u, v) == zemach_kernel(v, u));
    // the kernel exceeds max(u, v): overlap always adds to the linear term
    REQUIRE(zemach_kernel(2.0, 1.0) > 2.0);
}

TEST_CASE("truncated momentum integral with the point-like remainder",
          "[radius]") {
    const auto& set = pinned();
    const auto full = zemach_radius_momentum(dipole{0.71}, set, 1e-12);

    // at k_max = 10 GeV the neglected form-factor tail is ~1e-11 fm
    const auto k10 =
        zemach_radius_momentum(dipole{0.71}, set, 1e-12, {}, 10.0);
    REQUIRE_THAT(k10.radius.value, WithinAbs(full.radius.value, 1e-8));

    // at k_max = 2 GeV the dropped (positive) form-factor tail makes the
    // truncated radius slightly larger, but still within 1e-4 fm
    const auto k2 = zemach_radius_momentum(dipole{0.71}, set, 1e-12, {}, 2.0);
    REQUIRE(k2.radius.value > full.radius.value);
    REQUIRE_THAT(k2.radius.value, WithinAbs(full.radius.value, 1e-4));
}

TEST_CASE("the hybrid's dropped tail is numerically negligible", "[radius]") {
    const auto& set = pinned();
    const loaded_model simon = load_model("simon");
    const double hbar_c_gev_fm = set.value("hbar_c") * 1e-3;

    // the validity range ends where the linear ratio reaches the floor
    const double k2_end = 0.04 + (1.0 - ratio_hybrid::ratio_floor) / 0.13;
    const double k_end = std::sqrt(k2_end);

    quad_options opt;
    opt.epsrel = 1e-10;
    const auto q = integrate_finite(
        [&](double k) {
            return zemach_product(simon.model, k * k, set) / (k * k);
        },
        k_end, 1000.0, opt);
    REQUIRE(q.converged);
    const double dropped = 4.0 / 3.14159265358979323846 * hbar_c_gev_fm *
                           q.value;
    REQUIRE(dropped > 0.0);
    REQUIRE(dropped < 1e-4); // the documented bound
    // cross-checked against an independent adaptive integrator
    REQUIRE_THAT(dropped, WithinRel(7.7431855e-7, 1e-4));
}

TEST_CASE("hybrids have no coordinate-space route", "[radius]") {
    const auto& set = pinned();
    REQUIRE_THROWS_AS(zemach_radius_coordinate(
                          load_model("simon-ratio-electric").model, set),
                      model_error);
}

TEST_CASE("route failures and validation", "[radius]") {
    const auto& set = pinned();
    REQUIRE_THROWS_AS(zemach_radius_momentum(dipole{-0.71}, set), model_error);
    REQUIRE_THROWS_AS(zemach_radius_momentum(dipole{0.71}, set, 0.0), error);
    REQUIRE_THROWS_AS(zemach_radius_dipole_analytic(0.0, set), model_error);
    // a tolerance below the attainable floor exhausts the evaluation budget
    REQUIRE_THROWS_WITH(zemach_radius_momentum(dipole{0.71}, set, 1e-16),
                        ContainsSubstring("did not converge"));
}

TEST_CASE("zemach correction from a radius", "[radius]") {
    const auto& set = pinned();
    const atom_spec h = make_atom(set, lepton::electron);
    const atom_spec mu = make_atom(set, lepton::muon);

    SECTION("pinned values at reference radii") {
        const measurement dz_h =
            delta_zemach(measurement(1.040, 0.0, unit::fm), h, set);
        REQUIRE_THAT(dz_h.value, WithinRel(-3.92849082e-5, 1e-8));
        REQUIRE(dz_h.u == unit::dimensionless);

        const measurement dz_mu =
            delta_zemach(measurement(1.07, 0.0, unit::fm), mu, set);
        REQUIRE_THAT(dz_mu.value, WithinRel(-7.51542920e-3, 1e-8));
    }
    SECTION("uncertainty is linear in the radius uncertainty") {
        const measurement dz =
            delta_zemach(measurement(1.0, 0.1, unit::fm), h, set);
        const measurement c = zemach_coupling(h, set);
        REQUIRE_THAT(dz.sigma, WithinRel(0.1 * c.value, 1e-12));
        REQUIRE_THAT(dz.value, WithinRel(-c.value, 1e-12));
    }
    SECTION("input validation") {
        REQUIRE_THROWS_AS(
            delta_zemach(measurement(1.0, 0.0, unit::MeV), h, set),
            unit_error);
        REQUIRE_THROWS_AS(
            delta_zemach(measurement(-0.5, 0.0, unit::fm), h, set), error);
    }
}

TEST_CASE("zemach coupling constants", "[radius]") {
    const auto& set = pinned();
    const measurement ch = zemach_coupling(make_atom(set, lepton::electron), set);
    const measurement cm = zemach_coupling(make_atom(set, lepton::muon), set);

    REQUIRE_THAT(ch.value, WithinRel(3.7773950168e-5, 1e-9));
    REQUIRE_THAT(cm.value, WithinRel(7.0237656059e-3, 1e-9));
    REQUIRE(ch.u == unit::inverse_fm);
    REQUIRE(cm.u == unit::inverse_fm);

    // the couplings scale as the reduced masses
    REQUIRE_THAT(cm.value / ch.value, WithinRel(185.942047, 1e-8));

    // constants-driven uncertainty is tiny but nonzero
    REQUIRE(ch.sigma > 0.0);
    REQUIRE(ch.relative_sigma() < 1e-7);
}
