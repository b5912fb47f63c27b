#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "support.hpp"

#include "beltrami/config.hpp"
#include "beltrami/finite_type.hpp"
#include "beltrami/forms.hpp"
#include "beltrami/report.hpp"

using namespace beltrami;
using nlohmann::json;
using testing::kind_of;

TEST_CASE("parse a sphere config")
{
    const SurfaceSpec spec = parse_surface_spec(
        json::parse(R"({"name": "big", "family": "sphere", "params": {"r": 3}, "domain": [0, 6, -1, 1]})"));
    CHECK(spec.name == "big");
    REQUIRE(spec.domain);
    CHECK(spec.domain->u1 == 6.0);
    const SurfacePatch s = build_surface(spec);
    CHECK(s.name == "big");
    CHECK(form_bundle(eval_jet(s, {1.0, 0.2})).K == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("config round trip")
{
    SurfaceSpec spec;
    spec.name = "h";
    spec.family = "ruled";
    spec.ruling = "small-circle";
    spec.params = {{"phi", 0.9}, {"q0", 1.0}};
    const SurfaceSpec back = parse_surface_spec(to_json(spec));
    CHECK(back.ruling == "small-circle");
    CHECK(back.params == spec.params);
    CHECK(build_surface(back).ruled);
}

TEST_CASE("every family builds")
{
    for (const std::string& f : known_families()) {
        CAPTURE(f);
        json j{{"family", f}};
        if (f == "custom-grid") {
            j["domain"] = {-1, 1, -1, 1};
            j["z"] = json::array();
            for (int r = 0; r < 7; ++r) {
                json row = json::array();
                for (int c = 0; c < 7; ++c) {
                    const double u = -1.0 + c / 3.0, v = -1.0 + r / 3.0;
                    row.push_back(0.5 * u * u + v * v);
                }
                j["z"].push_back(row);
            }
        }
        const SurfacePatch s = build_surface(parse_surface_spec(j));
        CHECK(s.family == f);
    }
}

TEST_CASE("config errors")
{
    auto bad = [](const char* text) { return kind_of([&] { parse_surface_spec(json::parse(text)); }); };
    CHECK(bad(R"({"family": "torus"})") == ErrorKind::ConfigError);
    CHECK(bad(R"({"params": {"r": 1}})") == ErrorKind::ConfigError);
    CHECK(bad(R"({"family": "sphere", "params": {"a": 1}})") == ErrorKind::ConfigError);
    CHECK(bad(R"({"family": "sphere", "domain": [1, 0, 0, 1]})") == ErrorKind::ConfigError);
    CHECK(bad(R"({"family": "sphere", "domain": [0, 1, 0]})") == ErrorKind::ConfigError);
    CHECK(bad(R"({"family": "sphere", "colour": "red"})") == ErrorKind::ConfigError);
    CHECK(bad(R"({"family": "ruled", "ruling": "spiral"})") == ErrorKind::ConfigError);
    CHECK(bad(R"({"family": "custom-grid", "domain": [0, 1, 0, 1], "z": [[0, 1, 2], [0, 1]]})") ==
          ErrorKind::ConfigError);
    CHECK(bad(R"({"family": "custom-grid", "z": [[0, 1, 2], [0, 1, 2], [0, 1, 2]]})") == ErrorKind::ConfigError);
    CHECK(kind_of([] { build_surface(parse_surface_spec(json::parse(R"({"family": "sphere", "params": {"r": -1}})"))); }) ==
          ErrorKind::ConfigError);
    CHECK(kind_of([] { build_surface(parse_surface_spec(json::parse(R"({"family": "quadric2", "params": {"a": -1}})"))); }) ==
          ErrorKind::ConfigError);
    CHECK(kind_of([] { load_surface_spec("/nonexistent/surface.json"); }) == ErrorKind::ConfigError);
}

TEST_CASE("load a config file")
{
    const std::string path = "beltrami_test_config.json";
    {
        std::ofstream out(path);
        out << R"({"family": "helicoid", "params": {"c5": 2, "lambda": 1}})";
    }
    const SurfaceSpec spec = load_surface_spec(path);
    std::remove(path.c_str());
    CHECK(spec.params.at("c5") == 2.0);
    CHECK(analyze_surface(build_surface(spec), {}).verdict.kind == VerdictKind::NullType);
}

TEST_CASE("custom grid reproduces a sampled sphere cap")
{
    // Upper hemisphere of radius 2 sampled over [-0.6, 0.6]^2.
    SurfaceSpec spec;
    spec.name = "cap";
    spec.family = "custom-grid";
    spec.domain = Domain{-0.6, 0.6, -0.6, 0.6};
    spec.degree = 8;
    const int n = 17;
    for (int r = 0; r < n; ++r) {
        std::vector<double> row;
        for (int c = 0; c < n; ++c) {
            const double u = -0.6 + 1.2 * c / (n - 1), v = -0.6 + 1.2 * r / (n - 1);
            row.push_back(std::sqrt(4.0 - u * u - v * v));
        }
        spec.z.push_back(row);
    }
    const SurfacePatch s = build_surface(spec);
    CHECK(s.params.at("fit_residual") < 1e-6);
    const FormBundle fb = form_bundle(eval_jet(s, {0.1, -0.2}));
    CHECK(fb.K == doctest::Approx(0.25).epsilon(1e-4));
    const Verdict v = analyze_surface(s, {}).verdict;
    CHECK((v.fit.lambda - 2.0 * Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("fit report JSON and CSV")
{
    const SurfacePatch s = sphere(2.0);
    const Verdict v = analyze_surface(s, {}).verdict;
    const json j = fit_report_json(s, v);
    CHECK(j["schema"] == 1);
    CHECK(j["lambda"].size() == 9);
    CHECK(j["verdict"] == "SphereType");
    CHECK(j["mode"] == "strict");
    CHECK(j["n_samples"] == 36);

    const std::string header = fit_report_csv_header();
    const std::string row = fit_report_csv_row(s, v);
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
    CHECK(row.find("SphereType") != std::string::npos);
    CHECK(row.find('\n') == std::string::npos);

    const SurfacePatch shifted = sphere(1.0, Vec3(0, 0, 5));
    const Verdict a = analyze_surface(shifted, {}, FitMode::Affine).verdict;
    const json ja = fit_report_json(shifted, a);
    CHECK(ja["lambda"].size() == 12);
    CHECK(ja["affine_extension"] == true);
    CHECK(ja["lambda"][11].get<double>() == doctest::Approx(-10.0).epsilon(1e-5));
}

TEST_CASE("format_number round-trips")
{
    for (const double x : {0.1, 1.0 / 3.0, -2.5e-17, 12345.678}) {
        CHECK(std::stod(format_number(x)) == x);
    }
    CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("quadric table rows")
{
    const QuadricTableRow r1 = quadric_table_row(Quadric1Params{-1.0, -2.0, 1.0}, {}, 1e-4);
    CHECK(r1.verdict == "NotCoordinateFiniteType");
    CHECK(r1.identity_max < 1e-10);
    CHECK(r1.printed_identity2_max > 1e-3);
    CHECK(r1.operator_deviation < 1e-5);
    const QuadricTableRow r2 = quadric_table_row(Quadric2Params{1.0, 2.0}, {}, 1e-4);
    CHECK(r2.operator_deviation < 1e-5);
    CHECK(quadric_table_json(r2)["x3_reading"] == "actual_coordinate");
    const std::string csv = quadric_table_csv_row(r2);
    CHECK(csv.rfind("quadric2,1,2,0,NotCoordinateFiniteType,", 0) == 0);
}

TEST_CASE("ruled coefficient report")
{
    const RuledCoefficientReport r = ruled_coefficient_report(perturbed_pair(), Domain{0.0, 3.0, -1.0, 1.0}, 1.0);
    CHECK(r.max_deviation < 1e-4);
    const json j = ruled_report_json(r);
    CHECK(j["closed"].size() == 5);
    CHECK(j["probed"][0].size() == 7);
    CHECK(j["linear_term"]["matches"] == "3kappa_nu+3lambda_rho");
}
