#include <cmath>

#include "support.hpp"

#include "beltrami/forms.hpp"
#include "beltrami/operators.hpp"
#include "beltrami/ruled.hpp"
#include "beltrami/tpoly.hpp"

using namespace beltrami;
using testing::kind_of;
using testing::max_abs;

namespace {

double tpoly_gap(const TPoly& a, const TPoly& b)
{
    double m = 0.0;
    for (int k = 0; k <= TPoly::kMaxDegree; ++k) {
        m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
    }
    return m;
}

} // namespace

TEST_CASE("TPoly basics")
{
    const TPoly p({1.0, -2.0, 0.5, 0.0, 0.0});
    CHECK(p.degree() == 2);
    CHECK(p(2.0) == doctest::Approx(1.0 - 4.0 + 2.0));
    CHECK(p.coeff(5) == 0.0);
    CHECK(p.coeff(-1) == 0.0);
    CHECK((p + TPoly({0.0, 2.0})).degree() == 2);
    CHECK((p * 0.0).degree() < 1);
    CHECK(TPoly({1.0, 1e-14, 1e-13}).trimmed(1e-12).degree() == 0);
    CHECK_THROWS(TPoly(std::vector<double>(8, 1.0)));
}

TEST_CASE("TPoly fit reproduces a degree-6 polynomial")
{
    const TPoly truth({0.3, -1.0, 2.0, 0.5, -0.25, 0.1, -0.05});
    const std::vector<double> nodes = chebyshev_nodes(-1.5, 2.0, 8);
    std::vector<double> values;
    for (double t : nodes) {
        values.push_back(truth(t));
    }
    CHECK(tpoly_gap(TPoly::fit(nodes, values), truth) < 1e-11);

    const std::vector<double> clash{0.0, 0.1, 0.1, 0.2, 0.3, 0.4, 0.5};
    CHECK(kind_of([&] { TPoly::fit(clash, std::vector<double>(7, 1.0)); }) == ErrorKind::IllConditionedVandermonde);
    CHECK(kind_of([&] { TPoly::fit(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0, 2.0}); }) ==
          ErrorKind::IllConditionedVandermonde);
}

TEST_CASE("canonical pair gives the unit helicoid")
{
    const CurvePair pair = helicoid_pair();
    const SurfacePatch s = ruled_surface(pair, Domain{0.0, 3.0, 0.5, 2.0});
    const SurfacePatch h = helicoid({}, Domain{0.0, 3.0, 0.5, 2.0});
    for (const ParamPoint p : {ParamPoint{0.4, 0.7}, ParamPoint{2.5, 1.8}}) {
        const Jet2 a = eval_jet(s, p), b = eval_jet(h, p);
        CHECK(max_abs(a.x - b.x) < 1e-14);
        CHECK(max_abs(a.x_uu - b.x_uu) < 1e-14);
        CHECK(max_abs(a.x_vv) == 0.0);
    }
    CHECK(max_abs(eval_jet(s, {1.0, 0.5}).x - pair.alpha(1.0).value - 0.5 * pair.beta(1.0).value) < 1e-14);
}

TEST_CASE("t = 0 slice is the directrix")
{
    const CurvePair pair = perturbed_pair();
    const SurfacePatch s = ruled_surface(pair, Domain{0.0, 3.0, -1.0, 1.0});
    CHECK(max_abs(eval_jet(s, {1.3, 0.0}).x - pair.alpha(1.3).value) < 1e-14);
}

TEST_CASE("normalisation is enforced")
{
    CurvePair bad = helicoid_pair();
    bad.beta = [](double s) {
        return CurveJet{Vec3(2 * std::cos(s), 2 * std::sin(s), 0), Vec3(-2 * std::sin(s), 2 * std::cos(s), 0),
                        Vec3(-2 * std::cos(s), -2 * std::sin(s), 0)};
    };
    CHECK(kind_of([&] { ruled_surface(bad, Domain{0.0, 1.0, 0.5, 1.0}); }) == ErrorKind::NormalizationViolated);
    for (const CurvePair& p : {perturbed_pair(), small_circle_pair({})}) {
        for (const double s : {0.1, 0.9, 1.7}) {
            CHECK(check_normalization(p, s).ok());
        }
    }
}

TEST_CASE("helicoid invariants")
{
    const RuledInvariants inv = ruled_invariants(helicoid_pair(), 0.7);
    CHECK(inv.kappa == doctest::Approx(1.0));
    CHECK(std::abs(inv.lambda) < 1e-15);
    CHECK(std::abs(inv.mu) < 1e-15);
    CHECK(std::abs(inv.nu) < 1e-15);
    CHECK(std::abs(inv.rho) < 1e-15);
    CHECK(inv.A == doctest::Approx(1.0));

    const RuledInvariants g = ruled_invariants(helicoid_pair(2.0, 0.5), 1.1);
    CHECK(g.kappa == doctest::Approx(4.25));
    CHECK(g.lambda == doctest::Approx(0.5));
    CHECK(g.A == doctest::Approx(2.0));
}

TEST_CASE("constant terms of q and p")
{
    const RuledInvariants inv = ruled_invariants(small_circle_pair({}), 0.6);
    CHECK(inv.q(0.0) == inv.kappa);
    CHECK(inv.p(0.0) == inv.rho);
    CHECK(std::abs(inv.mu) > 1e-3);
}

TEST_CASE("canonical ruling satisfies beta'' = -beta")
{
    const CurvePair pair = helicoid_pair(1.5, 0.3);
    for (const double s : {0.0, 0.8, 2.9}) {
        const CurveJet b = pair.beta(s);
        CHECK(max_abs(b.d2 + b.value) == 0.0);
    }
}

TEST_CASE("closed forms on helicoid data")
{
    const OperatorCoefficients Q = q_closed_forms(ruled_invariants(helicoid_pair(), 0.5));
    CHECK(tpoly_gap(Q[0], TPoly({-1.0, 0.0, -1.0})) < 1e-12);
    CHECK(tpoly_gap(Q[1], TPoly()) < 1e-12);
    CHECK(tpoly_gap(Q[2], TPoly()) < 1e-9);

    const OperatorCoefficients G = q_closed_forms(ruled_invariants(small_circle_pair({}), 0.5));
    CHECK(G[4].degree() == 6);
    for (const TPoly& q : G) {
        CHECK(q.degree() <= 6);
    }
}

TEST_CASE("leading coefficient of Q5 when mu vanishes")
{
    const RuledInvariants inv = ruled_invariants(perturbed_pair(), 1.2);
    CHECK(std::abs(inv.mu) < 1e-12);
    const TPoly q5 = q_closed_forms(inv)[4];
    CHECK(std::abs(q5.coeff(6)) < 1e-20);
    CHECK(q5.coeff(4) == doctest::Approx(-(inv.nu * inv.nu + inv.A * inv.A) / std::pow(inv.A, 4)));
}

TEST_CASE("probing recovers the closed forms")
{
    const Domain dom{0.0, 2.0, -1.0, 1.0};
    const std::vector<double> nodes = chebyshev_nodes(-0.9, 0.9, 8);
    for (const CurvePair& pair : {helicoid_pair(1.0, 0.0), perturbed_pair(), small_circle_pair({})}) {
        CAPTURE(pair.name);
        const SurfacePatch s = ruled_surface(pair, dom);
        for (const double sv : {0.5, 1.3}) {
            const OperatorCoefficients probed = probe_coefficients(s, sv, nodes);
            const OperatorCoefficients closed = q_closed_forms(ruled_invariants(pair, sv));
            CHECK(coefficient_deviation(closed, probed) < 1e-5);
            CHECK(tpoly_gap(probed[0], closed[0]) < 1e-5);
        }
    }
    const OperatorCoefficients h = probe_coefficients(ruled_surface(helicoid_pair(), dom), 1.0, nodes);
    CHECK(tpoly_gap(h[2], TPoly()) < 1e-5);
    CHECK(tpoly_gap(h[3], TPoly({0.0, -1.0, 0.0, -1.0})) < 1e-5);
}

TEST_CASE("probing rejects nodes inside the striction guard")
{
    const SurfacePatch s = ruled_surface(helicoid_pair(1e-4), Domain{0.0, 2.0, -1.0, 1.0});
    const std::vector<double> nodes = chebyshev_nodes(-0.5, 0.5, 7);
    std::vector<double> with_zero = nodes;
    with_zero[3] = 0.0;
    CHECK(kind_of([&] { probe_coefficients(s, 1.0, with_zero); }) == ErrorKind::SingularForm);
}

TEST_CASE("assembled expansion matches the numeric operator")
{
    const CurvePair pair = small_circle_pair({});
    const SurfacePatch s = ruled_surface(pair, Domain{0.0, 2.0, -1.0, 1.0});
    const double sv = 0.9;
    const OperatorCoefficients Q = q_closed_forms(ruled_invariants(pair, sv));
    for (const double t : {-0.7, 0.0, 0.6}) {
        const Vec3 direct = delta3_position(s, {sv, t}).value;
        const Vec3 assembled = assemble_delta3(Q, pair.beta(sv), pair.alpha(sv), t);
        CHECK(max_abs(direct - assembled) < 1e-4 * (1.0 + direct.norm()));
    }
}

TEST_CASE("coefficient equations agree with the expansion of the closed forms")
{
    const CurvePair pair = small_circle_pair({});
    const double sv = 1.1;
    const RuledInvariants inv = ruled_invariants(pair, sv);
    const CurveJet a = pair.alpha(sv), b = pair.beta(sv);
    const OperatorCoefficients Q = q_closed_forms(inv);
    Mat3 L;
    L << 0.1, 0.2, 0.0, -0.3, 0.5, 0.1, 0.0, 0.4, -0.2;
    const std::array<Vec3, 6> eq = coefficient_equations(inv, b, a, L);
    const double scale = std::pow(inv.A, 4) * 10.0;
    CHECK(max_abs(eq[0] + expansion_coefficient(Q, inv.A, b, a, L, 5)) < 1e-9 * scale);
    for (int k = 4; k >= 0; --k) {
        CAPTURE(k);
        CHECK(max_abs(eq[5 - k] - expansion_coefficient(Q, inv.A, b, a, L, k)) < 1e-9 * scale);
    }
    CHECK(max_abs(eq[0] - 3.0 * inv.mu * inv.mu * b.value) == 0.0);

    const Vec3 wrong = coefficient_equations(inv, b, a, L, LinearTermVariant::Printed2_4)[4];
    CHECK(max_abs(wrong - eq[4]) > 1e-6);
}

TEST_CASE("helicoid data solves the coefficient equations with Lambda = 0")
{
    const CurvePair pair = helicoid_pair(1.7, 0.6, 0.2, 0.3, -0.4);
    for (const double sv : {0.3, 1.9}) {
        const RuledInvariants inv = ruled_invariants(pair, sv);
        for (const Vec3& r : coefficient_equations(inv, pair.beta(sv), pair.alpha(sv), Mat3::Zero())) {
            CHECK(max_abs(r) < 1e-8);
        }
    }
}

TEST_CASE("linear-term adjudication picks one variant")
{
    const CurvePair pair = small_circle_pair({});
    const SurfacePatch s = ruled_surface(pair, Domain{0.0, 2.0, -1.0, 1.0});
    const OperatorCoefficients probed = probe_coefficients(s, 0.7, chebyshev_nodes(-0.9, 0.9, 8));
    const VariantAdjudication v = adjudicate_linear_term(pair, probed, 0.7);
    CHECK(v.exactly_one());
    CHECK(v.matches_3_3);
}
