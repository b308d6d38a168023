#include "doctest.h"

#include "bohmflow/analysis.hpp"
#include "bohmflow/fields.hpp"
#include "bohmflow/quadrature.hpp"
#include "bohmflow/scenario.hpp"

#include "support/states.hpp"

using namespace bohmflow;

TEST_CASE("no_device: fringes, dark port, plane symmetry") {
    const Geometry g = testing_states::small_geometry();
    const Scenario sc = build_no_device(g);

    CHECK(fringe_visibility_analytic(sc, g.x_meet(), g.t_meet()) > 0.9);

    const DetectorProbabilities p = detector_probabilities(sc);
    CHECK(std::abs(p.p_d1 - 0.0) < 1e-12);
    CHECK(std::abs(p.p_d2 - 1.0) < 1e-12);
    CHECK(p.p_d1 + p.p_d2 == 1.0);
}

TEST_CASE("cavity: no fringes, even split, stationary device before I") {
    const Geometry g = testing_states::fast_geometry();
    const Scenario sc = build_cavity(g);

    CHECK(fringe_visibility_analytic(sc, g.x_meet(), g.t_meet()) < 0.05);
    const DetectorProbabilities p = detector_probabilities(sc);
    CHECK(p.p_d1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.p_d2 == doctest::Approx(0.5).epsilon(1e-12));

    // disjoint launch: the device particle is strictly at rest
    const Geometry wide = testing_states::wide_geometry();
    const Scenario far = build_cavity(wide);
    const FieldEvaluator fields(far.state());
    ConfigPoint q;
    q.atom = far.state().branches()[1].atom.packets[0].center_at(0.05);
    q.aux[0] = 1.3;
    CHECK(std::abs(fields.velocity(q, 0.05).aux[0]) < 1e-10);

    CHECK_THROWS_AS(build_cavity(g, {2, 2, kPi, 1.0, false}),
                    InvalidParameterError);
}

TEST_CASE("overlap device: limit cases and complex-alpha flux") {
    const Geometry g = testing_states::small_geometry();

    // alpha = 0 reduces to cavity behaviour
    const Scenario a0 = build_overlap_device(g, {{0.0, 0.0}, 1.0, 1.0});
    CHECK(std::abs(a0.device_alpha) < 1e-10);
    const DetectorProbabilities p0 = detector_probabilities(a0);
    CHECK(p0.p_d1 == doctest::Approx(0.5).epsilon(1e-10));

    // alpha = 1 reduces to no-device fringes
    const Scenario a1 = build_overlap_device(g, {{1.0, 0.0}, 1.0, 1.0});
    CHECK(fringe_visibility_analytic(a1, g.x_meet(), g.t_meet()) > 0.9);
    const DetectorProbabilities p1 = detector_probabilities(a1);
    CHECK(p1.p_d1 < 1e-6);

    // imaginary alpha drives a net flux through z = 0
    const Scenario ai = build_overlap_device(g, {{0.0, 0.5}, 1.0, 1.0});
    const double t_probe = g.t_meet() - 1.0 / (2.0 * g.vz());
    CHECK(std::abs(plane_flux(ai, t_probe)) > 1e-4);
    // while a real alpha keeps the plane dark
    const Scenario ar = build_overlap_device(g, {{0.5, 0.0}, 1.0, 1.0});
    CHECK(std::abs(plane_flux(ar, t_probe)) < 1e-10);

    CHECK_THROWS_AS(build_overlap_device(g, {{1.4, 0.0}, 1.0, 1.0}),
                    InvalidParameterError);
}

TEST_CASE("detector probabilities: alpha = 0.6 gives (0.2, 0.8)") {
    const Geometry g = testing_states::small_geometry();
    const Scenario sc = build_overlap_device(g, {{0.6, 0.0}, 1.0, 1.0});
    const DetectorProbabilities p = detector_probabilities(sc);
    // kappa at closure deviates from 1 only by the residual launch overlap
    CHECK(p.p_d1 == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(p.p_d2 == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(p.p_d1 + p.p_d2 == 1.0);

    // brute-force quadrature of the closed state: the dark-port norm
    // (1/2)||c1 phi1 eta0 - c2 phi2 eta1||^2 with the mode-matched
    // envelopes phi_i = |psi_i| and every overlap integrated numerically
    const auto& br = sc.state().branches();
    const double t = g.t_meet();
    const double kappa_quad = simpson2d(
        [&](double x, double z) {
            return std::abs(br[0].atom.packets[0].evaluate({x, z}, t)) *
                   std::abs(br[1].atom.packets[0].evaluate({x, z}, t));
        },
        g.x_meet() - 14.0, g.x_meet() + 14.0, -14.0, 14.0, 320, 320);
    const Complex alpha_quad =
        DeviceState::overlap(br[0].devices[0], br[1].devices[0]);
    const Complex cross = std::conj(br[0].coefficient) * br[1].coefficient *
                          kappa_quad * alpha_quad;
    const double w01 =
        std::norm(br[0].coefficient) + std::norm(br[1].coefficient);
    const double p1_quad = 0.5 * w01 - cross.real();
    CHECK(p.p_d1 == doctest::Approx(p1_quad).epsilon(1e-6));
}

TEST_CASE("alpha continuity: sweep endpoints match the dedicated scenarios") {
    const Geometry g = testing_states::small_geometry();
    const Scenario cavity = build_cavity(g);
    const Scenario nodev = build_no_device(g);
    const Scenario a0 = build_overlap_device(g, {{0.0, 0.0}, 1.0, 1.0});
    const Scenario a1 = build_overlap_device(g, {{1.0, 0.0}, 1.0, 1.0});

    CHECK(std::abs(detector_probabilities(a0).p_d1 -
                   detector_probabilities(cavity).p_d1) < 1e-10);
    CHECK(std::abs(detector_probabilities(a1).p_d1 -
                   detector_probabilities(nodev).p_d1) < 1e-10);

    const double t_probe = g.t_meet() - 1.0 / (2.0 * g.vz());
    CHECK(std::abs(plane_flux(a0, t_probe) - plane_flux(cavity, t_probe)) <
          1e-10);
    CHECK(std::abs(plane_flux(a1, t_probe) - plane_flux(nodev, t_probe)) <
          1e-10);

    // detector probabilities vary continuously (monotonically here)
    double prev = 0.5;
    for (double a = 0.0; a <= 1.0001; a += 0.1) {
        const Scenario s = build_overlap_device(g, {{a, 0.0}, 1.0, 1.0});
        const double p1 = detector_probabilities(s).p_d1;
        CHECK(p1 <= prev + 1e-12);
        prev = p1;
    }
}

TEST_CASE("D3: warning threshold and exact branch selection") {
    const Geometry g = testing_states::small_geometry();
    const Scenario weak = build_detector_d3(g, {6.0, 1.0, 1.0});
    CHECK(!weak.warning.empty());
    const Scenario sc = build_detector_d3(g, {16.0, 1.0, 1.0});
    CHECK(sc.warning.empty());

    // velocity from the full entangled state equals the occupied
    // branch's own velocity wherever pointer supports are disjoint
    const Scenario dens = build_density_operator_mode(g);
    const FieldEvaluator full(sc.state());
    const double t = g.t_meet();
    for (int k = 0; k < 2; ++k) {
        const FieldEvaluator pure(dens.components[static_cast<std::size_t>(k)]);
        for (double z : {-0.7, 0.2, 0.9}) {
            ConfigPoint q;
            q.atom = {g.x_meet() + 0.3, z};
            q.aux[0] = k == 0 ? 0.4 : 16.0 - 0.4;
            ConfigPoint qa;
            qa.atom = q.atom;
            const BlockVelocity vf = full.velocity(q, t);
            const BlockVelocity vp = pure.velocity(qa, t);
            CHECK(std::abs(vf.atom.x - vp.atom.x) < 1e-12 * g.speed);
            CHECK(std::abs(vf.atom.z - vp.atom.z) < 1e-12 * g.speed);
            // the pointer itself never moves
            CHECK(std::abs(vf.aux[0]) < 1e-12);
        }
    }
}

TEST_CASE("bubble: ionization limits") {
    const Geometry g = testing_states::fast_geometry();
    const Scenario healthy = build_bubble(g, {16.0, 1.0, 1.0});
    CHECK(healthy.warning.empty());
    CHECK(std::abs(healthy.device_alpha) < 1e-12);
    // fringe-free region I, like the cavity
    CHECK(fringe_visibility_analytic(healthy, g.x_meet(), g.t_meet()) < 0.05);

    // zero ionization: electron packet never separates, interference back
    const Scenario none = build_bubble(g, {0.0, 1.0, 1.0});
    CHECK(!none.warning.empty());
    CHECK(std::abs(none.device_alpha - Complex{1.0, 0.0}) < 1e-10);
    CHECK(fringe_visibility_analytic(none, g.x_meet(), g.t_meet()) > 0.9);
}

TEST_CASE("density-operator mode: independent component currents") {
    const Geometry g = testing_states::small_geometry();
    const Scenario sc = build_density_operator_mode(g);
    REQUIRE(sc.components.size() == 2);
    CHECK(sc.weights[0] + sc.weights[1] == 1.0);

    const double t = g.t_meet();
    // each component current is the bare packet current (Eq. 7 style):
    // currents pass through each other without cross terms
    for (int k = 0; k < 2; ++k) {
        const auto& comp = sc.components[static_cast<std::size_t>(k)];
        const FieldEvaluator fields(comp);
        const auto& packet = comp.branches()[0].atom.packets[0];
        ConfigPoint q;
        q.atom = packet.center_at(t);
        const BlockCurrent j = fields.current(q, t);
        const double p = fields.density(q, t);
        CHECK(j.atom.x / p == doctest::Approx(packet.velocity().x).epsilon(1e-9));
        CHECK(j.atom.z / p == doctest::Approx(packet.velocity().z).epsilon(1e-9));
    }

    // pooled plane flux cancels while the components are individually live
    const double t_probe = g.t_meet() - 0.6 / g.vz();
    const auto comp_flux = component_plane_flux(sc, t_probe);
    CHECK(std::abs(comp_flux[0]) > 1e-3);
    CHECK(std::abs(comp_flux[1]) > 1e-3);
    CHECK(std::abs(plane_flux(sc, t_probe)) < 1e-10);

    const DetectorProbabilities p = detector_probabilities(sc);
    CHECK(p.p_d1 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("closure sampling: exact dark port and binomial spread") {
    const Geometry g = testing_states::small_geometry();
    CHECK(sample_detector_counts(build_no_device(g), 10000, 42) == 0);
    const std::size_t d1 = sample_detector_counts(build_cavity(g), 10000, 42);
    CHECK(std::abs(static_cast<double>(d1) / 10000.0 - 0.5) < 4.0 * 0.005);
}

TEST_CASE("scenario window brackets the crossing time") {
    const Geometry g = testing_states::small_geometry();
    const Scenario sc = build_no_device(g);
    CHECK(sc.window_lo < g.t_meet());
    CHECK(sc.window_hi > g.t_meet());
    CHECK(sc.window_lo > g.t_start);
}
