#include <cmath>

#include "support.hpp"

#include "beltrami/forms.hpp"
#include "beltrami/verification.hpp"

using namespace beltrami;
using testing::kind_of;
using testing::max_abs;

TEST_CASE("unit sphere jet at the origin of the chart")
{
    const Jet2 j = eval_jet(sphere(1.0), {0.0, 0.0});
    CHECK(max_abs(j.x - Vec3(1, 0, 0)) < 1e-15);
    CHECK(max_abs(j.x_u - Vec3(0, 1, 0)) < 1e-15);
    CHECK(max_abs(j.x_v - Vec3(0, 0, 1)) < 1e-15);
}

TEST_CASE("helicoid jet matches hand differentiation and finite differences")
{
    const SurfacePatch h = helicoid({}, Domain{-1.0, 1.0, 0.5, 2.0});
    const Jet2 j = eval_jet(h, {0.0, 1.0});
    CHECK(max_abs(j.x - Vec3(1, 0, 0)) < 1e-15);
    CHECK(max_abs(j.x_u - Vec3(0, 1, 1)) < 1e-15);
    CHECK(max_abs(j.x_v - Vec3(1, 0, 0)) < 1e-15);
    const Jet2 fd = fd_jet(testing::position_of(h), {0.0, 1.0});
    CHECK(max_abs(fd.x_u - j.x_u) < 1e-6);
    CHECK(max_abs(fd.x_v - j.x_v) < 1e-6);
}

TEST_CASE("kind-II quadric has constant x_uu")
{
    const Jet2 j = eval_jet(quadric2_surface({1.0, 1.0}), {1.0, 0.0});
    CHECK(max_abs(j.x_uu - Vec3(0, 0, 1)) < 1e-15);
}

TEST_CASE("analytic jets agree with Richardson finite differences")
{
    std::mt19937_64 rng(11);
    for (const SurfacePatch& s : testing::analytic_catalog()) {
        CAPTURE(s.name);
        double worst = 0.0;
        for (const ParamPoint& p : random_guarded_points(s, 20, rng)) {
            const Jet2 a = eval_jet(s, p);
            const Jet2 f = fd_jet(testing::position_of(s), p, 1e-4);
            for (const auto& [x, y] : {std::pair{a.x_u, f.x_u}, std::pair{a.x_v, f.x_v}, std::pair{a.x_uu, f.x_uu},
                                       std::pair{a.x_uv, f.x_uv}, std::pair{a.x_vv, f.x_vv}}) {
                worst = std::max(worst, max_abs(x - y));
            }
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("eval_jet rejects points outside the domain and degenerate charts")
{
    CHECK(kind_of([] { eval_jet(sphere(1.0), {0.0, 2.0}); }) == ErrorKind::OutOfDomain);
    SurfacePatch pole = sphere(1.0, Vec3::Zero(), Domain{0.0, 1.0, 1.0, 1.5707963267948966});
    CHECK(kind_of([&] { eval_jet(pole, {0.5, 1.5707963267948966}); }) == ErrorKind::DegenerateImmersion);
}

TEST_CASE("sphere of radius 2 has K = 1/4 and |H| = 1/2")
{
    const FormBundle fb = form_bundle(eval_jet(sphere(2.0), {0.7, 0.3}));
    CHECK(fb.K == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(fb.H) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fb.n.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("helicoid is minimal")
{
    const SurfacePatch h = helicoid({2.0, 0.5});
    for (const ParamPoint p : {ParamPoint{0.3, 0.7}, ParamPoint{2.0, 1.9}}) {
        CHECK(std::abs(form_bundle(eval_jet(h, p)).H) < 1e-14);
    }
}

TEST_CASE("ruled surface curvature from invariants")
{
    const CurvePair pair = small_circle_pair({});
    const SurfacePatch s = ruled_surface(pair, Domain{0.0, 2.0, -1.0, 1.0});
    const RuledInvariants inv = ruled_invariants(pair, 0.8);
    for (const double t : {-0.9, -0.2, 0.4, 0.95}) {
        const double K = form_bundle(eval_jet(s, {0.8, t})).K;
        CHECK(K == doctest::Approx(-inv.A * inv.A / (inv.q(t) * inv.q(t))).epsilon(1e-10));
    }
}

TEST_CASE("third form examples")
{
    const FormBundle s = form_bundle(eval_jet(sphere(1.0), {0.4, -0.6}));
    CHECK((s.e.matrix() - s.g.matrix()).cwiseAbs().maxCoeff() < 1e-14);

    const FormBundle pl = form_bundle(eval_jet(plane(), {0.2, 0.1}));
    CHECK(pl.e.matrix().cwiseAbs().maxCoeff() == 0.0);

    const FormBundle q = form_bundle(eval_jet(quadric2_surface({1.0, 1.0}), {0.0, 0.0}));
    CHECK((q.g.matrix() - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((q.b.matrix() - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((q.e.matrix() - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);

    CHECK(kind_of([] { third_form({1.0, 1.0, 1.0}, {1.0, 0.0, 1.0}); }) == ErrorKind::SingularMetric);
}

TEST_CASE("parabolic guard")
{
    CHECK(parabolic_guard(form_bundle(eval_jet(sphere(2.0), {0.1, 0.1})), 1e-6));
    CHECK_FALSE(parabolic_guard(form_bundle(eval_jet(plane(), {0.1, 0.1})), 1e-6));
    const SurfacePatch cyl = cylinder(1.0);
    for (const ParamPoint p : {ParamPoint{0.1, 0.0}, ParamPoint{3.0, 0.9}}) {
        CHECK_FALSE(parabolic_guard(form_bundle(eval_jet(cyl, p)), 1e-6));
    }
}

TEST_CASE("Weingarten derivatives of the Gauss map match finite differences")
{
    const SurfacePatch s = quadric1_surface({-0.5, -2.0, 1.0});
    const ParamPoint p{0.2, -0.1};
    const Jet2 j = eval_jet(s, p);
    const auto [nu, nv] = gauss_map_derivatives(j, form_bundle(j));
    const double h = 1e-5;
    auto n_at = [&](double du, double dv) { return form_bundle(eval_jet(s, {p.u + du, p.v + dv})).n; };
    CHECK(max_abs(nu - (n_at(h, 0) - n_at(-h, 0)) / (2 * h)) < 1e-8);
    CHECK(max_abs(nv - (n_at(0, h) - n_at(0, -h)) / (2 * h)) < 1e-8);
}

TEST_CASE("chart swap reverses the normal and keeps K")
{
    const SurfacePatch s = quadric1_surface({-1.0, -2.0, 1.0});
    const SurfacePatch w = swapped(s);
    const FormBundle a = form_bundle(eval_jet(s, {0.1, 0.2}));
    const FormBundle b = form_bundle(eval_jet(w, {0.2, 0.1}));
    CHECK(max_abs(a.n + b.n) < 1e-14);
    CHECK(a.K == doctest::Approx(b.K).epsilon(1e-12));
    CHECK(a.H == doctest::Approx(-b.H).epsilon(1e-12));
}

TEST_CASE("sheared chart domain stays inside the original")
{
    const SurfacePatch s = sphere(1.0);
    const SurfacePatch sh = sheared(s);
    for (const double v : {sh.domain.v0, sh.domain.v1}) {
        for (const double u : {sh.domain.u0, sh.domain.u1}) {
            CHECK(s.domain.contains({u + 0.3 * v, v}));
        }
    }
    const ParamPoint back = sheared_point({1.0, 0.5});
    CHECK(back.u == doctest::Approx(0.85));
}
