#include "beltrami/forms.hpp"

#include <cmath>

#include "beltrami/errors.hpp"

namespace beltrami {

SymTensor2 SymTensor2::from_matrix(const Mat2& m)
{
    return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)};
}

SymTensor2 third_form(const SymTensor2& g, const SymTensor2& b)
{
    const double dg = g.det();
    if (!(dg > 1e-14)) {
        throw GeometryError(ErrorKind::SingularMetric, "det g <= 1e-14");
    }
    // Adjugate form of g^-1 keeps the product symmetric term by term.
    const double i11 = g.f22 / dg;
    const double i12 = -g.f12 / dg;
    const double i22 = g.f11 / dg;
    SymTensor2 e;
    e.f11 = b.f11 * (i11 * b.f11 + i12 * b.f12) + b.f12 * (i12 * b.f11 + i22 * b.f12);
    e.f12 = b.f11 * (i11 * b.f12 + i12 * b.f22) + b.f12 * (i12 * b.f12 + i22 * b.f22);
    e.f22 = b.f12 * (i11 * b.f12 + i12 * b.f22) + b.f22 * (i12 * b.f12 + i22 * b.f22);
    return e;
}

FormBundle form_bundle(const Jet2& jet)
{
    const Vec3 normal = jet.x_u.cross(jet.x_v);
    const double len = normal.norm();
    if (!(len >= 1e-12)) {
        throw GeometryError(ErrorKind::DegenerateImmersion, "|x_u x x_v| < 1e-12");
    }

    FormBundle out;
    out.n = normal / len;
    out.g = {jet.x_u.dot(jet.x_u), jet.x_u.dot(jet.x_v), jet.x_v.dot(jet.x_v)};
    out.b = {jet.x_uu.dot(out.n), jet.x_uv.dot(out.n), jet.x_vv.dot(out.n)};
    out.e = third_form(out.g, out.b);

    const double dg = out.g.det();
    out.K = out.b.det() / dg;
    // H = 1/2 tr(g^-1 b)
    out.H = 0.5 * (out.g.f22 * out.b.f11 - 2.0 * out.g.f12 * out.b.f12 + out.g.f11 * out.b.f22) / dg;
    return out;
}

bool parabolic_guard(const FormBundle& bundle, double eps_K)
{
    return std::abs(bundle.K) > eps_K;
}

std::pair<Vec3, Vec3> gauss_map_derivatives(const Jet2& jet, const FormBundle& bundle)
{
    // n_{,i} = -b_{ij} g^{jk} x_k
    const Mat2 shape = bundle.b.matrix() * bundle.g.matrix().inverse();
    const Vec3 n_u = -(shape(0, 0) * jet.x_u + shape(0, 1) * jet.x_v);
    const Vec3 n_v = -(shape(1, 0) * jet.x_u + shape(1, 1) * jet.x_v);
    return {n_u, n_v};
}

} // namespace beltrami
