#include "doctest.h"

#include "bohmflow.h"

#include "bohmflow/fields.hpp"
#include "bohmflow/config.hpp"

#include <cstring>
#include <filesystem>
#include <string>

TEST_CASE("C API: version and error reporting") {
    CHECK(std::strstr(bf_version(), "bohmflow") != nullptr);
    CHECK(bf_config_load("/no/such/file.cfg") == nullptr);
    CHECK(std::strlen(bf_last_error()) > 0);
    CHECK(bf_config_parse("bogus.key = 1\n") == nullptr);
    CHECK(std::strstr(bf_last_error(), "bogus.key") != nullptr);
}

TEST_CASE("C API: config lifecycle and key validation") {
    bf_config* cfg = bf_config_default();
    REQUIRE(cfg != nullptr);
    CHECK(bf_config_set(cfg, "scenario.kind", "cavity") == BF_OK);
    CHECK(bf_config_set(cfg, "ensemble.seed", "77") == BF_OK);
    CHECK(bf_config_set(cfg, "no.such.key", "1") == BF_ERR_CONFIG);
    char* text = bf_config_serialize(cfg);
    REQUIRE(text != nullptr);
    CHECK(std::strstr(text, "scenario.kind = cavity") != nullptr);
    CHECK(std::strstr(text, "ensemble.seed = 77") != nullptr);
    bf_string_free(text);
    bf_config_free(cfg);
}

TEST_CASE("C API: scenario queries match the C++ core") {
    bf_config* cfg = bf_config_parse("scenario.kind = cavity\n"
                                     "geometry.theta = 0.4\n"
                                     "geometry.separation = 8\n"
                                     "geometry.speed = 5\n");
    REQUIRE(cfg != nullptr);
    bf_scenario* sc = bf_scenario_create(cfg);
    REQUIRE(sc != nullptr);
    CHECK(bf_scenario_n_aux(sc) == 1);

    double p1 = 0.0, p2 = 0.0;
    REQUIRE(bf_detector_probabilities(sc, &p1, &p2) == BF_OK);
    CHECK(p1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p1 + p2 == doctest::Approx(1.0).epsilon(1e-15));

    // cross-check one field sample against the C++ evaluator
    const bohmflow::RunConfig ref = bohmflow::parse_config(
        "scenario.kind = cavity\ngeometry.theta = 0.4\n"
        "geometry.separation = 8\ngeometry.speed = 5\n");
    const bohmflow::Scenario native = ref.build_scenario();
    const bohmflow::FieldEvaluator fields(native.state());
    const double t = native.geometry.t_meet();
    const double q[3] = {native.geometry.x_meet(), 0.3, 1.2};
    double out[6];
    REQUIRE(bf_field_sample(sc, q, 3, t, out, 6) == BF_OK);
    bohmflow::ConfigPoint point;
    point.atom = {q[0], q[1]};
    point.aux[0] = q[2];
    CHECK(out[0] == doctest::Approx(fields.density(point, t)).epsilon(1e-14));
    const auto j = fields.current(point, t);
    CHECK(out[1] == doctest::Approx(j.atom.x).epsilon(1e-14));
    CHECK(out[2] == doctest::Approx(j.atom.z).epsilon(1e-14));
    CHECK(out[3] == doctest::Approx(j.aux[0]).epsilon(1e-14));

    // wrong arity is rejected
    CHECK(bf_field_sample(sc, q, 2, t, out, 6) == BF_ERR_CONFIG);

    double flux = 1.0;
    REQUIRE(bf_plane_flux(sc, t, &flux) == BF_OK);
    CHECK(std::abs(flux) < 1e-10);

    bf_scenario_free(sc);
    bf_config_free(cfg);
}

TEST_CASE("C API: full run through the shared-library boundary") {
    namespace fs = std::filesystem;
    fs::remove_all("test_out/capi_run");
    bf_config* cfg = bf_config_parse("scenario.kind = no_device\n"
                                     "geometry.theta = 0.4\n"
                                     "geometry.separation = 8\n"
                                     "geometry.speed = 5\n"
                                     "ensemble.n = 12\n"
                                     "ensemble.seed = 5\n"
                                     "output.dir = test_out/capi_run\n"
                                     "output.grid_nx = 16\n"
                                     "output.grid_nz = 20\n"
                                     "output.traj_dump_max = 4\n");
    REQUIRE(cfg != nullptr);
    char* report = nullptr;
    const bf_status st = bf_run(cfg, 1, &report);
    INFO(bf_last_error());
    REQUIRE(st == BF_OK);
    REQUIRE(report != nullptr);
    CHECK(std::strstr(report, "detector.analytic.p_d2 = 1") != nullptr);
    bf_string_free(report);
    CHECK(fs::exists("test_out/capi_run/no_device_s5_report.txt"));
    bf_config_free(cfg);
}
