#include "beltrami/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "beltrami/errors.hpp"

namespace beltrami {

namespace {

void require_kind1(const Quadric1Params& p)
{
    if (p.a * p.b * p.c == 0.0) {
        throw GeometryError(ErrorKind::DomainViolation, "kind-I quadric needs abc != 0");
    }
}

void require_kind2(const Quadric2Params& p)
{
    if (!(p.a > 0.0) || !(p.b > 0.0)) {
        throw GeometryError(ErrorKind::DomainViolation, "kind-II quadric needs a > 0 and b > 0");
    }
}

void require_interior(const Quadric1Params& p, double u, double v)
{
    if (!(quadric1_omega(p, u, v) > kQuadricGuard) || !(quadric1_T(p, u, v) > kQuadricGuard)) {
        throw GeometryError(ErrorKind::DomainViolation, "omega or T below the chart guard");
    }
}

// Partial derivatives of the auxiliary polynomials.
struct ABCDerivatives {
    double A_u, B_u, B_v, C_v;
};

ABCDerivatives abc_derivatives(const Quadric1Params& p, double u, double v)
{
    const double a = p.a, b = p.b, c = p.c;
    const double w = quadric1_omega(p, u, v);
    const double S = u * u + v * v + w;
    ABCDerivatives d;
    d.A_u = 2.0 * a * a * u * v * v + 4.0 * a * u * (a * u * u + c) + 2.0 * a * a * u * w +
            2.0 * a * a * a * u * u * u;
    d.C_v = 2.0 * b * b * u * u * v + 4.0 * b * v * (b * v * v + c) + 2.0 * b * b * v * w +
            2.0 * b * b * b * v * v * v;
    d.B_u = v * (c * (a + b) + a * b * S) + u * v * a * b * (2.0 * u + 2.0 * a * u);
    d.B_v = u * (c * (a + b) + a * b * S) + u * v * a * b * (2.0 * v + 2.0 * b * v);
    return d;
}

double identity_residual(double lhs, double rhs)
{
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

FormBundle bundle_from(const SymTensor2& g, const SymTensor2& b, const SymTensor2& e, const Vec3& n)
{
    FormBundle out;
    out.g = g;
    out.b = b;
    out.e = e;
    out.n = n;
    const double dg = g.det();
    out.K = b.det() / dg;
    out.H = 0.5 * (g.f22 * b.f11 - 2.0 * g.f12 * b.f12 + g.f11 * b.f22) / dg;
    return out;
}

std::vector<ParamPoint> worst_points(const SurfaceAnalysis& an, size_t count)
{
    const LambdaFit& fit = an.verdict.fit;
    std::vector<double> score(an.samples.size());
    for (size_t k = 0; k < an.samples.size(); ++k) {
        Vec3 r = an.samples[k].delta - fit.lambda * an.samples[k].x;
        if (fit.translation) {
            r -= *fit.translation;
        }
        score[k] = r.norm() / (1.0 + an.samples[k].delta.norm());
    }
    std::vector<size_t> idx(score.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](size_t l, size_t r) { return score[l] > score[r]; });
    std::vector<ParamPoint> out;
    for (size_t k = 0; k < std::min(count, idx.size()); ++k) {
        out.push_back(an.points[idx[k]]);
    }
    return out;
}

} // namespace

double quadric1_omega(const Quadric1Params& p, double u, double v)
{
    return p.c + p.a * u * u + p.b * v * v;
}

double quadric1_T(const Quadric1Params& p, double u, double v)
{
    return p.c + p.a * (p.a + 1.0) * u * u + p.b * (p.b + 1.0) * v * v;
}

QuadricABC quadric1_abc(const Quadric1Params& p, double u, double v)
{
    const double a = p.a, b = p.b, c = p.c;
    const double w = quadric1_omega(p, u, v);
    QuadricABC r;
    r.A = std::pow(a * u * v, 2) + std::pow(a * u * u + c, 2) + a * a * u * u * w;
    r.B = u * v * (c * (a + b) + a * b * (u * u + v * v + w));
    r.C = std::pow(b * u * v, 2) + std::pow(b * v * v + c, 2) + b * b * v * v * w;
    return r;
}

Domain quadric1_default_domain(const Quadric1Params& p)
{
    require_kind1(p);
    const double a = p.a, b = p.b, c = p.c;
    if (c > 0.0) {
        const int negatives = (a < 0.0 ? 1 : 0) + (b < 0.0 ? 1 : 0);
        const double wu = a < 0.0 ? 0.9 * std::sqrt(c / (negatives * std::abs(a))) : 1.0;
        const double wv = b < 0.0 ? 0.9 * std::sqrt(c / (negatives * std::abs(b))) : 1.0;
        return {-wu, wu, -wv, wv};
    }
    // c < 0: the chart lives where the positive coefficient lifts omega above zero.
    if (a > 0.0) {
        const double r = std::sqrt(-c / a);
        const double wv = b < 0.0 ? 0.5 * std::sqrt(0.44 * -c / -b) : 1.0;
        return {1.2 * r, 1.2 * r + 1.0, -wv, wv};
    }
    if (b > 0.0) {
        const double r = std::sqrt(-c / b);
        const double wu = 0.5 * std::sqrt(0.44 * -c / -a);
        return {-wu, wu, 1.2 * r, 1.2 * r + 1.0};
    }
    throw GeometryError(ErrorKind::DomainViolation, "a, b, c < 0 has no real points");
}

SurfacePatch quadric1_surface(const Quadric1Params& p, std::optional<Domain> domain)
{
    require_kind1(p);
    SurfacePatch s;
    s.name = "quadric1";
    s.family = "quadric1";
    s.params = {{"a", p.a}, {"b", p.b}, {"c", p.c}};
    s.domain = domain.value_or(quadric1_default_domain(p));
    s.admissible = [p](ParamPoint q) {
        return quadric1_omega(p, q.u, q.v) > kQuadricGuard && quadric1_T(p, q.u, q.v) > kQuadricGuard;
    };
    s.evaluator = [p](ParamPoint q) {
        const double u = q.u, v = q.v;
        const double w = quadric1_omega(p, u, v);
        if (!(w > 0.0)) {
            throw GeometryError(ErrorKind::DomainViolation, "omega <= 0 on the kind-I chart");
        }
        const double z = std::sqrt(w);
        const double z3 = z * w;
        Jet2 j;
        j.x = Vec3(u, v, z);
        j.x_u = Vec3(1.0, 0.0, p.a * u / z);
        j.x_v = Vec3(0.0, 1.0, p.b * v / z);
        j.x_uu = Vec3(0.0, 0.0, p.a / z - p.a * p.a * u * u / z3);
        j.x_uv = Vec3(0.0, 0.0, -p.a * p.b * u * v / z3);
        j.x_vv = Vec3(0.0, 0.0, p.b / z - p.b * p.b * v * v / z3);
        return j;
    };
    return s;
}

SurfacePatch quadric2_surface(const Quadric2Params& p, std::optional<Domain> domain)
{
    require_kind2(p);
    SurfacePatch s;
    s.name = "quadric2";
    s.family = "quadric2";
    s.params = {{"a", p.a}, {"b", p.b}};
    s.domain = domain.value_or(Domain{-1.0, 1.0, -1.0, 1.0});
    s.evaluator = [p](ParamPoint q) {
        Jet2 j;
        j.x = Vec3(q.u, q.v, 0.5 * p.a * q.u * q.u + 0.5 * p.b * q.v * q.v);
        j.x_u = Vec3(1.0, 0.0, p.a * q.u);
        j.x_v = Vec3(0.0, 1.0, p.b * q.v);
        j.x_uu = Vec3(0.0, 0.0, p.a);
        j.x_vv = Vec3(0.0, 0.0, p.b);
        return j;
    };
    return s;
}

FormBundle quadric1_forms(const Quadric1Params& p, double u, double v)
{
    require_kind1(p);
    require_interior(p, u, v);
    const double a = p.a, b = p.b, c = p.c;
    const double w = quadric1_omega(p, u, v);
    const double T = quadric1_T(p, u, v);
    const double rT = std::sqrt(T);
    const QuadricABC abc = quadric1_abc(p, u, v);

    const SymTensor2 g{1.0 + (a * u) * (a * u) / w, a * b * u * v / w, 1.0 + (b * v) * (b * v) / w};
    const SymTensor2 bb{a * (c + b * v * v) / (w * rT), -a * b * u * v / (w * rT),
                        b * (c + a * u * u) / (w * rT)};
    const double denom = w * T * T;
    const SymTensor2 e{a * a * abc.C / denom, -a * b * abc.B / denom, b * b * abc.A / denom};
    const Vec3 n = Vec3(-a * u, -b * v, std::sqrt(w)) / rT;
    return bundle_from(g, bb, e, n);
}

FormBundle quadric2_forms(const Quadric2Params& p, double u, double v)
{
    require_kind2(p);
    const double a = p.a, b = p.b;
    const double g = 1.0 + (a * u) * (a * u) + (b * v) * (b * v);
    const double rg = std::sqrt(g);
    const SymTensor2 gg{1.0 + (a * u) * (a * u), a * b * u * v, 1.0 + (b * v) * (b * v)};
    const SymTensor2 bb{a / rg, 0.0, b / rg};
    const SymTensor2 e{a * a * (1.0 + b * b * v * v) / (g * g), -a * a * b * b * u * v / (g * g),
                       b * b * (1.0 + a * a * u * u) / (g * g)};
    return bundle_from(gg, bb, e, Vec3(-a * u, -b * v, 1.0) / rg);
}

double ABCIdentities::max() const
{
    return *std::max_element(residuals.begin(), residuals.end());
}

ABCIdentities abc_identities(const Quadric1Params& p, double u, double v)
{
    const double a = p.a, b = p.b, c = p.c;
    const double w = quadric1_omega(p, u, v);
    const double T = quadric1_T(p, u, v);
    const QuadricABC f = quadric1_abc(p, u, v);
    const ABCDerivatives d = abc_derivatives(p, u, v);

    const double bracket_u = 5.0 * a * b * (a + 1.0) * u * u + 5.0 * a * b * (b + 1.0) * v * v +
                             c * (3.0 * a * b + 5.0 * b + a);
    const double bracket_v = 5.0 * a * b * (a + 1.0) * u * u + 5.0 * a * b * (b + 1.0) * v * v +
                             c * (3.0 * a * b + 5.0 * a + b);

    ABCIdentities out;
    out.residuals[0] = identity_residual(b * d.A_u + a * d.B_v, a * u * bracket_u);
    const double lhs2 = a * d.C_v + b * d.B_u;
    out.residuals[1] = identity_residual(lhs2, b * v * bracket_v);
    out.printed_second = identity_residual(lhs2, a * v * bracket_v);
    out.residuals[2] = identity_residual(u * f.A + v * f.B,
                                         (c + a * (a + 1.0) * u * u + a * (b + 1.0) * v * v) * u * w);
    out.residuals[3] = identity_residual(u * f.B + v * f.C,
                                         (c + b * (a + 1.0) * u * u + b * (b + 1.0) * v * v) * v * w);
    out.residuals[4] =
        identity_residual((a + 1.0) * u * f.A + (b + 1.0) * v * f.B,
                          u * (c * (a + 1.0) + a * (a + 1.0) * u * u + a * (b + 1.0) * v * v) * T);
    out.residuals[5] =
        identity_residual((b + 1.0) * v * f.C + (a + 1.0) * u * f.B,
                          v * (c * (b + 1.0) + b * (a + 1.0) * u * u + b * (b + 1.0) * v * v) * T);
    return out;
}

Vec2 quadric1_delta3_coords(const Quadric1Params& p, double u, double v)
{
    require_kind1(p);
    require_interior(p, u, v);
    const double a = p.a, b = p.b, c = p.c;
    const double T = quadric1_T(p, u, v);
    const double common = 3.0 * (a + 1.0) * u * u + 3.0 * (b + 1.0) * v * v;
    const double du = -(u * T / (c * c)) * (common + c * (3.0 * b + a + 2.0 * a * b) / (a * b));
    const double dv = -(v * T / (c * c)) * (common + c * (b + 3.0 * a + 2.0 * a * b) / (a * b));
    return {du, dv};
}

double quadric1_operator(const Quadric1Params& p, const ScalarField& phi, double u, double v)
{
    require_kind1(p);
    require_interior(p, u, v);
    if (!phi.hessian) {
        throw GeometryError(ErrorKind::ConfigError, "kind-I operator needs the Hessian of phi");
    }
    const double a = p.a, b = p.b, c = p.c;
    const double w = quadric1_omega(p, u, v);
    const double T = quadric1_T(p, u, v);
    const QuadricABC f = quadric1_abc(p, u, v);
    const ABCDerivatives d = abc_derivatives(p, u, v);
    const Vec2 gr = phi.gradient({u, v});
    const Mat2 hs = phi.hessian({u, v});
    const double k = std::pow(a * b * c, 2);

    const double second = b * b * f.A * hs(0, 0) + 2.0 * a * b * f.B * hs(0, 1) + a * a * f.C * hs(1, 1);
    const double first_a = b * (b * d.A_u + a * d.B_v) * gr[0] + a * (a * d.C_v + b * d.B_u) * gr[1];
    const double first_b = a * b * b / w * (u * f.A + v * f.B) * gr[0] +
                           a * a * b / w * (u * f.B + v * f.C) * gr[1];
    const double first_c = a * b * b * ((a + 1.0) * u * f.A + (b + 1.0) * v * f.B) * gr[0] +
                           a * a * b * ((b + 1.0) * v * f.C + (a + 1.0) * u * f.B) * gr[1];
    return -T / k * second - T / k * first_a + T / k * first_b + first_c / k;
}

double quadric2_operator(const Quadric2Params& p, const ScalarField& phi, double u, double v)
{
    require_kind2(p);
    if (!phi.hessian) {
        throw GeometryError(ErrorKind::ConfigError, "kind-II operator needs the Hessian of phi");
    }
    const double a = p.a, b = p.b;
    const double g = 1.0 + (a * u) * (a * u) + (b * v) * (b * v);
    const Vec2 gr = phi.gradient({u, v});
    const Mat2 hs = phi.hessian({u, v});
    return -g * (1.0 + a * a * u * u) / (a * a) * hs(0, 0) - g * (1.0 + b * b * v * v) / (b * b) * hs(1, 1) -
           2.0 * u * v * g * hs(0, 1) - 2.0 * u * g * gr[0] - 2.0 * v * g * gr[1];
}

Vec2 quadric2_delta3_coords(const Quadric2Params& p, double u, double v)
{
    require_kind2(p);
    const double g = 1.0 + (p.a * u) * (p.a * u) + (p.b * v) * (p.b * v);
    return {-2.0 * u * g, -2.0 * v * g};
}

NoSolutionWitness quadric_no_solution_witness(const Quadric1Params& p, const SampleOptions& sampling,
                                              double tau)
{
    NoSolutionWitness out;
    out.family = "quadric1";
    out.expected_sphere = p.a == -1.0 && p.b == -1.0;
    const SurfaceAnalysis an = analyze_surface(quadric1_surface(p), sampling, FitMode::Strict, tau);
    out.verdict = an.verdict;
    out.witness_points = worst_points(an, 3);
    if (out.expected_sphere) {
        out.consistent = out.verdict.kind == VerdictKind::SphereType;
    } else {
        out.consistent = out.verdict.kind == VerdictKind::NotCoordinateFiniteType &&
                         out.verdict.fit.residual_max >= 10.0 * tau;
    }
    return out;
}

NoSolutionWitness quadric_no_solution_witness(const Quadric2Params& p, const SampleOptions& sampling,
                                              double tau)
{
    NoSolutionWitness out;
    out.family = "quadric2";
    const SurfaceAnalysis an = analyze_surface(quadric2_surface(p), sampling, FitMode::Strict, tau);
    out.verdict = an.verdict;
    out.witness_points = worst_points(an, 3);
    out.consistent = out.verdict.kind == VerdictKind::NotCoordinateFiniteType &&
                     out.verdict.fit.residual_max >= 10.0 * tau;
    return out;
}

} // namespace beltrami
