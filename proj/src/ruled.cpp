#include "beltrami/ruled.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "beltrami/errors.hpp"

namespace beltrami {

namespace {

double triple(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

GaussRule gauss_legendre(int n)
{
    GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        rule.x[i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return rule;
}

Vec3 integrate(const std::function<Vec3(double)>& f, double a, double b)
{
    static const GaussRule rule = gauss_legendre(12);
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / 0.25)));
    const double h = (b - a) / panels;
    Vec3 acc = Vec3::Zero();
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (size_t i = 0; i < rule.x.size(); ++i) {
            acc += rule.w[i] * f(mid + 0.5 * h * rule.x[i]);
        }
    }
    return 0.5 * h * acc;
}

struct RawInvariants {
    double kappa, lambda, mu, nu, rho, A;
};

RawInvariants raw_invariants(const CurvePair& curves, double s)
{
    const CurveJet a = curves.alpha(s);
    const CurveJet b = curves.beta(s);
    return {a.d1.dot(a.d1),
            a.d1.dot(b.d1),
            triple(b.d1, b.value, b.d2),
            triple(a.d1, b.value, b.d2) + triple(b.d1, b.value, a.d2),
            triple(a.d1, b.value, a.d2),
            triple(a.d1, b.value, b.d1)};
}

} // namespace

bool NormalizationCheck::ok(double tol) const
{
    return std::abs(alpha_beta) <= tol && std::abs(beta_beta) <= tol && std::abs(betap_betap) <= tol;
}

NormalizationCheck check_normalization(const CurvePair& curves, double s)
{
    const CurveJet a = curves.alpha(s);
    const CurveJet b = curves.beta(s);
    return {a.d1.dot(b.value), b.value.dot(b.value) - 1.0, b.d1.dot(b.d1) - 1.0};
}

SurfacePatch ruled_surface(const CurvePair& curves, const Domain& domain)
{
    for (int k = 0; k <= 8; ++k) {
        const double s = domain.u0 + k * domain.width() / 8.0;
        if (!check_normalization(curves, s).ok()) {
            throw GeometryError(ErrorKind::NormalizationViolated,
                                curves.name + ": <a',b>=0, |b|=1, |b'|=1 fails at s=" +
                                    std::to_string(s));
        }
    }
    SurfacePatch patch;
    patch.name = "ruled:" + curves.name;
    patch.family = "ruled";
    patch.params = curves.params;
    patch.domain = domain;
    patch.ruled = true;
    patch.evaluator = [curves](ParamPoint p) {
        const CurveJet a = curves.alpha(p.u);
        const CurveJet b = curves.beta(p.u);
        const double t = p.v;
        Jet2 j;
        j.x = a.value + t * b.value;
        j.x_u = a.d1 + t * b.d1;
        j.x_v = b.value;
        j.x_uu = a.d2 + t * b.d2;
        j.x_uv = b.d1;
        j.x_vv = Vec3::Zero();
        return j;
    };
    return patch;
}

double RuledInvariants::gauss_curvature(double t) const
{
    const double qt = q(t);
    return -A * A / (qt * qt);
}

RuledInvariants ruled_invariants(const CurvePair& curves, double s, double step)
{
    const RawInvariants c = raw_invariants(curves, s);
    const RawInvariants hi = raw_invariants(curves, s + step);
    const RawInvariants lo = raw_invariants(curves, s - step);
    const double inv2h = 1.0 / (2.0 * step);

    RuledInvariants r;
    r.kappa = c.kappa;
    r.lambda = c.lambda;
    r.mu = c.mu;
    r.nu = c.nu;
    r.rho = c.rho;
    r.A = c.A;
    r.dkappa = (hi.kappa - lo.kappa) * inv2h;
    r.dlambda = (hi.lambda - lo.lambda) * inv2h;
    r.dmu = (hi.mu - lo.mu) * inv2h;
    r.dnu = (hi.nu - lo.nu) * inv2h;
    r.drho = (hi.rho - lo.rho) * inv2h;
    r.dA = (hi.A - lo.A) * inv2h;
    return r;
}

OperatorCoefficients q_closed_forms(const RuledInvariants& v)
{
    if (v.A == 0.0) {
        throw GeometryError(ErrorKind::SingularForm, "A = 0: cylindrical ruling");
    }
    const double k = v.kappa, l = v.lambda, mu = v.mu, nu = v.nu, rho = v.rho, A = v.A;
    const double kp = v.dkappa, lp = v.dlambda, mup = v.dmu, nup = v.dnu, rhop = v.drho,
                 Ap = v.dA;
    const double A2 = A * A, A3 = A2 * A, A4 = A2 * A2;

    OperatorCoefficients Q;
    Q[0] = TPoly({k, 2.0 * l, 1.0}) * (-1.0 / A2);
    Q[1] = TPoly({k * rho, 2.0 * l * rho + k * nu, 2.0 * l * nu + rho + k * mu, 2.0 * l * mu + nu, mu}) *
           (2.0 / A3);
    Q[2] = TPoly({0.5 * kp * A - l * rho + k * nu, l * nu - rho + 2.0 * k * mu + lp * A, 3.0 * l * mu, mu}) *
           (1.0 / A3);

    const double q4_5 = -3.0 * mu * mu;
    const double q4_4 = mup * A - mu * Ap - 4.0 * mu * nu - 7.0 * l * mu * mu;
    const double q4_3 = nup * A - nu * Ap + 2.0 * l * mup * A - 2.0 * l * mu * Ap - lp * mu * A - A2 -
                        10.0 * l * mu * nu - 2.0 * mu * rho - nu * nu - 4.0 * k * mu * mu;
    const double q4_2 = k * mup * A - k * mu * Ap - 0.5 * kp * mu * A + 2.0 * l * nup * A -
                        2.0 * l * nu * Ap - lp * nu * A - rho * Ap + rhop * A - 3.0 * l * A2 -
                        3.0 * l * nu * nu - 6.0 * l * mu * rho - 6.0 * k * mu * nu;
    const double q4_1 = k * nup * A - k * nu * Ap - 0.5 * kp * nu * A + 2.0 * l * rhop * A -
                        2.0 * l * rho * Ap - lp * rho * A - k * A2 - 2.0 * l * l * A2 -
                        2.0 * k * nu * nu + rho * rho - 2.0 * l * nu * rho - 4.0 * k * mu * rho;
    const double q4_0 = k * rhop * A - k * rho * Ap - 0.5 * kp * rho * A + l * rho * rho - k * l * A2 -
                        2.0 * k * nu * rho;
    Q[3] = TPoly({q4_0, q4_1, q4_2, q4_3, q4_4, q4_5}) * (1.0 / A4);

    const double q5_6 = mu * mu;
    const double q5_5 = 2.0 * mu * nu + 2.0 * l * mu * mu;
    const double q5_4 = 2.0 * mu * rho + nu * nu + 4.0 * l * mu * nu + k * mu * mu + A2;
    const double q5_3 = 2.0 * nu * rho + 4.0 * l * mu * rho + 2.0 * l * nu * nu + 2.0 * k * mu * nu +
                        4.0 * l * A2;
    const double q5_2 = rho * rho + 4.0 * l * nu * rho + 2.0 * k * mu * rho + k * nu * nu +
                        4.0 * l * l * A2 + 2.0 * k * A2;
    const double q5_1 = 2.0 * l * rho * rho + 2.0 * k * nu * rho + 4.0 * l * k * A2;
    const double q5_0 = k * rho * rho + k * k * A2;
    Q[4] = TPoly({q5_0, q5_1, q5_2, q5_3, q5_4, q5_5, q5_6}) * (-1.0 / A4);
    return Q;
}

OperatorCoefficients probe_coefficients(const SurfacePatch& surface, double s,
                                        std::span<const double> t_nodes,
                                        const OperatorOptions& opts, double eps_q)
{
    const ScalarField f_s = monomial_field(1, 0);
    const ScalarField f_t = monomial_field(0, 1);
    const ScalarField f_ss = monomial_field(2, 0);
    const ScalarField f_tt = monomial_field(0, 2);
    const ScalarField f_st = monomial_field(1, 1);

    std::array<std::vector<double>, 5> values;
    for (double t : t_nodes) {
        const ParamPoint p{s, t};
        const Jet2 jet = eval_jet(surface, p);
        if (jet.x_u.squaredNorm() <= eps_q) {
            throw GeometryError(ErrorKind::SingularForm,
                                surface.name + ": probe node inside the striction guard");
        }
        const double ds = laplace_beltrami(surface, FormKind::III, f_s, p, opts);
        const double dt = laplace_beltrami(surface, FormKind::III, f_t, p, opts);
        const double dss = laplace_beltrami(surface, FormKind::III, f_ss, p, opts);
        const double dtt = laplace_beltrami(surface, FormKind::III, f_tt, p, opts);
        const double dst = laplace_beltrami(surface, FormKind::III, f_st, p, opts);

        const double q3 = ds;
        const double q4 = dt;
        values[0].push_back(0.5 * (dss - 2.0 * s * q3));
        values[1].push_back(dst - s * q4 - t * q3);
        values[2].push_back(q3);
        values[3].push_back(q4);
        values[4].push_back(0.5 * (dtt - 2.0 * t * q4));
    }

    OperatorCoefficients Q;
    for (int i = 0; i < 5; ++i) {
        Q[i] = TPoly::fit(t_nodes, values[i]);
    }
    return Q;
}

std::string to_string(LinearTermVariant variant)
{
    return variant == LinearTermVariant::Printed2_4 ? "2kappa_nu+4lambda_rho"
                                                    : "3kappa_nu+3lambda_rho";
}

std::array<Vec3, 6> coefficient_equations(const RuledInvariants& v, const CurveJet& beta,
                                          const CurveJet& alpha, const Mat3& L,
                                          LinearTermVariant variant)
{
    const double k = v.kappa, l = v.lambda, mu = v.mu, nu = v.nu, rho = v.rho, A = v.A;
    const double kp = v.dkappa, lp = v.dlambda, mup = v.dmu, nup = v.dnu, rhop = v.drho,
                 Ap = v.dA;
    const double A2 = A * A, A4 = A2 * A2;
    const Vec3& b = beta.value;
    const Vec3& b1 = beta.d1;
    const Vec3& b2 = beta.d2;
    const Vec3& a1 = alpha.d1;
    const Vec3& a2 = alpha.d2;

    std::array<Vec3, 6> r;
    // t^5, written as 3 mu^2 beta (the expansion coefficient is its negative).
    r[0] = 3.0 * mu * mu * b;
    // t^4
    r[1] = (mup * A - mu * Ap - 4.0 * mu * nu - 7.0 * l * mu * mu) * b + 3.0 * mu * A * b1;
    // t^3
    r[2] = mu * A * a1 - A2 * b2 + (2.0 * nu * A + 7.0 * l * mu * A) * b1 +
           (nup * A - nu * Ap + 2.0 * l * mup * A - 2.0 * l * mu * Ap - lp * mu * A - A2 -
            10.0 * l * mu * nu - 2.0 * mu * rho - nu * nu - 4.0 * k * mu * mu) *
               b;
    // t^2
    r[3] = (k * mup * A - k * mu * Ap - 0.5 * kp * mu * A + 2.0 * l * nup * A - 2.0 * l * nu * Ap -
            lp * nu * A - rho * Ap + rhop * A - 3.0 * l * A2 - 3.0 * l * nu * nu -
            6.0 * l * mu * rho - 6.0 * k * mu * nu) *
               b +
           3.0 * l * mu * A * a1 - 2.0 * l * A2 * b2 - A2 * a2 +
           (lp * A + 5.0 * l * nu + 4.0 * k * mu + rho) * A * b1;
    // t^1
    const double c_nu = variant == LinearTermVariant::Printed2_4 ? 2.0 : 3.0;
    const double c_rho = variant == LinearTermVariant::Printed2_4 ? 4.0 : 3.0;
    r[4] = (k * nup * A - k * nu * Ap - 0.5 * kp * nu * A + 2.0 * l * rhop * A - 2.0 * l * rho * Ap -
            lp * rho * A - k * A2 - 2.0 * l * l * A2 - 2.0 * k * nu * nu + rho * rho -
            2.0 * l * nu * rho - 4.0 * k * mu * rho) *
               b -
           2.0 * l * A2 * a2 - k * A2 * b2 + (0.5 * kp * A + c_nu * k * nu + c_rho * l * rho) * A * b1 +
           (l * nu - rho + 2.0 * k * mu + lp * A) * A * a1 - A4 * (L * b);
    // t^0
    r[5] = (k * rhop * A - k * rho * Ap - 0.5 * kp * rho * A + l * rho * rho - k * l * A2 -
            2.0 * k * nu * rho) *
               b +
           2.0 * k * rho * A * b1 + (0.5 * kp * A - l * rho + k * nu) * A * a1 - k * A2 * a2 -
           A4 * (L * alpha.value);
    return r;
}

Vec3 expansion_coefficient(const OperatorCoefficients& Q, double A, const CurveJet& beta,
                           const CurveJet& alpha, const Mat3& L, int k)
{
    Vec3 c = Q[0].coeff(k) * alpha.d2 + Q[1].coeff(k) * beta.d1 + Q[2].coeff(k) * alpha.d1 +
             Q[3].coeff(k) * beta.value + Q[0].coeff(k - 1) * beta.d2 + Q[2].coeff(k - 1) * beta.d1;
    if (k == 0) {
        c -= L * alpha.value;
    } else if (k == 1) {
        c -= L * beta.value;
    }
    const double A2 = A * A;
    return A2 * A2 * c;
}

Vec3 assemble_delta3(const OperatorCoefficients& Q, const CurveJet& beta, const CurveJet& alpha,
                     double t)
{
    return Q[0](t) * alpha.d2 + Q[1](t) * beta.d1 + Q[2](t) * alpha.d1 + Q[3](t) * beta.value +
           (Q[0](t) * beta.d2 + Q[2](t) * beta.d1) * t;
}

VariantAdjudication adjudicate_linear_term(const CurvePair& curves, const OperatorCoefficients& probed,
                                           double s, double rel_tol)
{
    const RuledInvariants inv = ruled_invariants(curves, s);
    const CurveJet a = curves.alpha(s);
    const CurveJet b = curves.beta(s);
    const Vec3 truth = expansion_coefficient(probed, inv.A, b, a, Mat3::Zero(), 1);
    const Vec3 v24 = coefficient_equations(inv, b, a, Mat3::Zero(), LinearTermVariant::Printed2_4)[4];
    const Vec3 v33 = coefficient_equations(inv, b, a, Mat3::Zero(), LinearTermVariant::Printed3_3)[4];

    VariantAdjudication out;
    out.tolerance = rel_tol * std::max(1.0, truth.norm());
    out.deviation_2_4 = (v24 - truth).norm();
    out.deviation_3_3 = (v33 - truth).norm();
    out.matches_2_4 = out.deviation_2_4 <= out.tolerance;
    out.matches_3_3 = out.deviation_3_3 <= out.tolerance;
    return out;
}

double coefficient_deviation(const OperatorCoefficients& closed, const OperatorCoefficients& probed)
{
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        double scale = 1.0;
        for (double c : closed[i].coeffs()) {
            scale = std::max(scale, std::abs(c));
        }
        for (int k = 0; k <= TPoly::kMaxDegree; ++k) {
            worst = std::max(worst, std::abs(probed[i].coeff(k) - closed[i].coeff(k)) / scale);
        }
    }
    return worst;
}

CurvePair helicoid_pair(double c5, double lambda, double c2, double c4, double c6)
{
    CurvePair cp;
    cp.name = "helicoid";
    cp.params = {{"c5", c5}, {"lambda", lambda}, {"c2", c2}, {"c4", c4}, {"c6", c6}};
    cp.alpha = [=](double s) {
        const double c = std::cos(s), sn = std::sin(s);
        return CurveJet{Vec3(c2 + lambda * c, c4 + lambda * sn, c5 * s + c6),
                        Vec3(-lambda * sn, lambda * c, c5), Vec3(-lambda * c, -lambda * sn, 0.0)};
    };
    cp.beta = [](double s) {
        const double c = std::cos(s), sn = std::sin(s);
        return CurveJet{Vec3(c, sn, 0.0), Vec3(-sn, c, 0.0), Vec3(-c, -sn, 0.0)};
    };
    return cp;
}

CurvePair perturbed_pair()
{
    CurvePair cp;
    cp.name = "perturbed";
    cp.beta = [](double s) {
        const double c = std::cos(s), sn = std::sin(s);
        return CurveJet{Vec3(c, sn, 0.0), Vec3(-sn, c, 0.0), Vec3(-c, -sn, 0.0)};
    };
    // alpha = gamma + f beta with gamma = (sin 2s, cos 2s, s), f = -(2/3) sin 3s.
    cp.alpha = [beta = cp.beta](double s) {
        const CurveJet b = beta(s);
        const double f = -2.0 / 3.0 * std::sin(3.0 * s);
        const double f1 = -2.0 * std::cos(3.0 * s);
        const double f2 = 6.0 * std::sin(3.0 * s);
        const Vec3 g(std::sin(2.0 * s), std::cos(2.0 * s), s);
        const Vec3 g1(2.0 * std::cos(2.0 * s), -2.0 * std::sin(2.0 * s), 1.0);
        const Vec3 g2(-4.0 * std::sin(2.0 * s), -4.0 * std::cos(2.0 * s), 0.0);
        return CurveJet{g + f * b.value, g1 + f1 * b.value + f * b.d1,
                        g2 + f2 * b.value + 2.0 * f1 * b.d1 + f * b.d2};
    };
    return cp;
}

CurvePair small_circle_pair(const SmallCirclePairParams& sp)
{
    CurvePair cp;
    cp.name = "small-circle";
    cp.params = {{"phi", sp.phi}, {"p0", sp.p0}, {"p1", sp.p1}, {"k1", sp.k1},
                 {"q0", sp.q0},   {"q1", sp.q1}, {"k2", sp.k2}};
    const double sphi = std::sin(sp.phi), cphi = std::cos(sp.phi);
    const double w = 1.0 / sphi;
    const Mat3 R = sp.rotation;
    cp.beta = [=](double s) {
        const double c = std::cos(w * s), sn = std::sin(w * s);
        return CurveJet{R * Vec3(sphi * c, sphi * sn, cphi), R * Vec3(-sn, c, 0.0),
                        R * Vec3(-w * c, -w * sn, 0.0)};
    };
    auto derivative = [beta = cp.beta, sp](double s) {
        const CurveJet b = beta(s);
        const double a1 = sp.p0 + sp.p1 * std::sin(sp.k1 * s);
        const double a1p = sp.p1 * sp.k1 * std::cos(sp.k1 * s);
        const double a2 = sp.q0 + sp.q1 * std::cos(sp.k2 * s);
        const double a2p = -sp.q1 * sp.k2 * std::sin(sp.k2 * s);
        const Vec3 m = b.value.cross(b.d1);
        const Vec3 mp = b.value.cross(b.d2);
        return std::pair<Vec3, Vec3>{a1 * b.d1 + a2 * m, a1p * b.d1 + a1 * b.d2 + a2p * m + a2 * mp};
    };
    cp.alpha = [derivative](double s) {
        const auto [d1, d2] = derivative(s);
        const Vec3 value = integrate([&](double x) { return derivative(x).first; }, 0.0, s);
        return CurveJet{value, d1, d2};
    };
    return cp;
}

CurvePair random_curve_pair(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    SmallCirclePairParams sp;
    sp.phi = in(0.6, 1.3);
    sp.p0 = in(-0.5, 0.5);
    sp.p1 = in(-0.3, 0.3);
    sp.k1 = in(0.5, 1.5);
    sp.q0 = in(0.6, 1.2);
    sp.q1 = in(-0.3, 0.3);
    sp.k2 = in(0.5, 1.5);
    std::normal_distribution<double> gauss;
    Eigen::Quaterniond quat(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    quat.normalize();
    sp.rotation = quat.toRotationMatrix();

    CurvePair cp = small_circle_pair(sp);
    cp.name = "random-small-circle";
    return cp;
}

} // namespace beltrami
