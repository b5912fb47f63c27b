#include <cmath>

#include "support.hpp"

#include "beltrami/finite_type.hpp"
#include "beltrami/forms.hpp"
#include "beltrami/operators.hpp"
#include "beltrami/verification.hpp"

using namespace beltrami;
using testing::max_abs;

namespace {

Mat3 random_rotation(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
    return q.normalized().toRotationMatrix();
}

double rel(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

} // namespace

TEST_CASE("form tensors are symmetric and satisfy Cayley-Hamilton")
{
    std::mt19937_64 rng(101);
    for (const SurfacePatch& s : testing::analytic_catalog()) {
        CAPTURE(s.name);
        for (const ParamPoint& p : random_guarded_points(s, 100, rng)) {
            const FormBundle fb = form_bundle(eval_jet(s, p));
            const Mat2 e = fb.e.matrix();
            CHECK(e(0, 1) == e(1, 0));
            const Mat2 ch = e - 2.0 * fb.H * fb.b.matrix() + fb.K * fb.g.matrix();
            const double scale = std::max({e.cwiseAbs().maxCoeff(), std::abs(fb.K) * fb.g.matrix().cwiseAbs().maxCoeff()});
            CHECK(ch.cwiseAbs().maxCoeff() <= 1e-10 * scale);
            CHECK(rel(fb.e.det(), fb.K * fb.K * fb.g.det()) < 1e-10);
            const Mat2 bgb = fb.b.matrix() * fb.g.matrix().inverse() * fb.b.matrix();
            CHECK((bgb - e).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, e.cwiseAbs().maxCoeff()));
            CHECK(std::abs(fb.n.norm() - 1.0) < 1e-12);
            CHECK(fb.g.det() > 0.0);
            CHECK(fb.e.det() > 0.0);
            CHECK(fb.e.f11 > 0.0);
        }
    }
}

TEST_CASE("curvatures and normal are invariant under the linear chart change")
{
    std::mt19937_64 rng(102);
    for (const SurfacePatch& s : testing::analytic_catalog()) {
        CAPTURE(s.name);
        const SurfacePatch sh = sheared(s, 0.3);
        for (const ParamPoint& q : random_guarded_points(sh, 100, rng)) {
            const FormBundle a = form_bundle(eval_jet(sh, q));
            const FormBundle b = form_bundle(eval_jet(s, {q.u + 0.3 * q.v, q.v}));
            CHECK(std::abs(a.K - b.K) < 1e-9 * std::max(1.0, std::abs(b.K)));
            CHECK(std::abs(a.H - b.H) < 1e-9 * std::max(1.0, std::abs(b.H)));
            CHECK(max_abs(a.n - b.n) < 1e-9);
        }
    }
}

TEST_CASE("position operator and identity survive an orientation flip")
{
    std::mt19937_64 rng(103);
    for (const SurfacePatch& s : {sphere(1.5), catenoid(1.0), quadric1_surface({-1.0, -2.0, 1.0}),
                                  quadric2_surface({1.0, 2.0})}) {
        CAPTURE(s.name);
        const SurfacePatch w = swapped(s);
        for (const ParamPoint& p : random_guarded_points(s, 10, rng)) {
            const ParamPoint q{p.v, p.u};
            const OperatorSample a = delta3_position(s, p);
            const OperatorSample b = delta3_position(w, q);
            CHECK(max_abs(a.value - b.value) < 1e-6 * (1.0 + a.value.norm()));
            CHECK(max_abs(a.n + b.n) < 1e-12);
            CHECK(position_identity(w, q).residual < 1e-5);
        }
    }
}

TEST_CASE("third operator is linear on polynomial fields")
{
    std::mt19937_64 rng(104);
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const std::vector<SurfacePatch> surfaces = testing::analytic_catalog();
    for (int trial = 0; trial < 100; ++trial) {
        const SurfacePatch& s = surfaces[trial % surfaces.size()];
        const ParamPoint p = random_guarded_points(s, 1, rng).front();
        const ScalarField f = monomial_field(deg(rng), deg(rng));
        const ScalarField g = monomial_field(deg(rng), deg(rng));
        const double al = coef(rng), be = coef(rng);
        const double lhs = laplace_beltrami(s, FormKind::III, linear_combination(al, f, be, g), p);
        const double rhs = al * laplace_beltrami(s, FormKind::III, f, p) + be * laplace_beltrami(s, FormKind::III, g, p);
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("Lambda is rotation equivariant")
{
    std::mt19937_64 rng(105);
    for (const SurfacePatch& s : {sphere(2.0), helicoid({}), quadric1_surface({-1.0, -2.0, 1.0}),
                                  quadric2_surface({1.0, 1.0})}) {
        CAPTURE(s.name);
        const Mat3 R = random_rotation(rng);
        const LambdaFit base = analyze_surface(s, {}).verdict.fit;
        const LambdaFit rot = analyze_surface(transformed(s, R), {}).verdict.fit;
        CHECK((rot.lambda - R * base.lambda * R.transpose()).cwiseAbs().maxCoeff() < 1e-6);
        CHECK(std::abs(rot.residual_max - base.residual_max) < 1e-8);
        CHECK(std::abs(rot.residual_rms - base.residual_rms) < 1e-8);
    }
}

TEST_CASE("sphere eigenvalue does not depend on the radius")
{
    for (const double r : {0.5, 1.0, 2.0, 5.0}) {
        CAPTURE(r);
        const LambdaFit fit = analyze_surface(sphere(r), {}).verdict.fit;
        CHECK((fit.lambda - 2.0 * Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("ruled curvature formula at random points")
{
    std::mt19937_64 rng(106);
    for (int k = 0; k < 5; ++k) {
        const CurvePair pair = random_curve_pair(rng);
        const SurfacePatch s = ruled_surface(pair, Domain{0.0, 2.0, -1.0, 1.0});
        for (const ParamPoint& p : random_guarded_points(s, 20, rng)) {
            const double K = form_bundle(eval_jet(s, p)).K;
            CHECK(std::abs(K - ruled_invariants(pair, p.u).gauss_curvature(p.v)) < 1e-8);
        }
    }
}
