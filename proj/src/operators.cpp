#include "beltrami/operators.hpp"

#include <array>
#include <cmath>

#include "beltrami/errors.hpp"

namespace beltrami {

std::string to_string(FormKind kind)
{
    switch (kind) {
    case FormKind::I: return "I";
    case FormKind::II: return "II";
    case FormKind::III: return "III";
    }
    return "?";
}

ScalarField constant_field(double c)
{
    return {"const",
            [c](ParamPoint) { return c; },
            [](ParamPoint) { return Vec2::Zero().eval(); },
            [](ParamPoint) { return Mat2::Zero().eval(); }};
}

ScalarField monomial_field(int i, int j)
{
    auto pw = [](double x, int k) { return k <= 0 ? 1.0 : std::pow(x, k); };
    ScalarField f;
    f.name = "u^" + std::to_string(i) + " v^" + std::to_string(j);
    f.value = [=](ParamPoint p) { return pw(p.u, i) * pw(p.v, j); };
    f.gradient = [=](ParamPoint p) {
        const double du = i > 0 ? i * pw(p.u, i - 1) * pw(p.v, j) : 0.0;
        const double dv = j > 0 ? j * pw(p.u, i) * pw(p.v, j - 1) : 0.0;
        return Vec2(du, dv);
    };
    f.hessian = [=](ParamPoint p) {
        Mat2 h;
        h(0, 0) = i > 1 ? i * (i - 1) * pw(p.u, i - 2) * pw(p.v, j) : 0.0;
        h(1, 1) = j > 1 ? j * (j - 1) * pw(p.u, i) * pw(p.v, j - 2) : 0.0;
        h(0, 1) = h(1, 0) = (i > 0 && j > 0) ? i * j * pw(p.u, i - 1) * pw(p.v, j - 1) : 0.0;
        return h;
    };
    return f;
}

ScalarField linear_combination(double alpha, const ScalarField& f, double beta,
                               const ScalarField& g)
{
    ScalarField out;
    out.name = "combo";
    out.value = [=](ParamPoint p) { return alpha * f.value(p) + beta * g.value(p); };
    out.gradient = [=](ParamPoint p) { return (alpha * f.gradient(p) + beta * g.gradient(p)).eval(); };
    if (f.hessian && g.hessian) {
        out.hessian = [=](ParamPoint p) { return (alpha * f.hessian(p) + beta * g.hessian(p)).eval(); };
    }
    return out;
}

ScalarField coordinate_field(const SurfacePatch& surface, int k)
{
    ScalarField f;
    f.name = "x" + std::to_string(k + 1);
    f.value = [surface, k](ParamPoint p) { return eval_jet(surface, p).x[k]; };
    f.gradient = [surface, k](ParamPoint p) {
        const Jet2 j = eval_jet(surface, p);
        return Vec2(j.x_u[k], j.x_v[k]);
    };
    f.hessian = [surface, k](ParamPoint p) {
        const Jet2 j = eval_jet(surface, p);
        return (Mat2() << j.x_uu[k], j.x_uv[k], j.x_uv[k], j.x_vv[k]).finished();
    };
    return f;
}

ScalarField gauss_field(const SurfacePatch& surface, int k)
{
    ScalarField f;
    f.name = "n" + std::to_string(k + 1);
    f.value = [surface, k](ParamPoint p) { return form_bundle(eval_jet(surface, p)).n[k]; };
    f.gradient = [surface, k](ParamPoint p) {
        const Jet2 j = eval_jet(surface, p);
        const auto [n_u, n_v] = gauss_map_derivatives(j, form_bundle(j));
        return Vec2(n_u[k], n_v[k]);
    };
    return f;
}

double nabla(const SymTensor2& form, const Vec2& dphi, const Vec2& dpsi)
{
    const double d = form.det();
    if (std::abs(d) < 1e-14) {
        throw GeometryError(ErrorKind::SingularForm, "|det F| < 1e-14");
    }
    const double i11 = form.f22 / d, i12 = -form.f12 / d, i22 = form.f11 / d;
    return i11 * dphi[0] * dpsi[0] + i12 * (dphi[0] * dpsi[1] + dphi[1] * dpsi[0]) +
           i22 * dphi[1] * dpsi[1];
}

namespace {

const SymTensor2& select(const FormBundle& fb, FormKind kind)
{
    switch (kind) {
    case FormKind::I: return fb.g;
    case FormKind::II: return fb.b;
    case FormKind::III: return fb.e;
    }
    return fb.e;
}

struct LocalFrame {
    Jet2 jet;
    FormBundle bundle;
};

LocalFrame frame_at(const SurfacePatch& surface, FormKind kind, ParamPoint q, double eps_K)
{
    LocalFrame fr;
    fr.jet = eval_jet(surface, q);
    fr.bundle = form_bundle(fr.jet);
    if (kind != FormKind::I && !parabolic_guard(fr.bundle, eps_K)) {
        throw GeometryError(ErrorKind::SingularForm,
                            surface.name + ": parabolic point inside the stencil");
    }
    return fr;
}

// Gradients of m fields at a stencil point, one column per field.
template <int M>
using GradientBlock = Eigen::Matrix<double, 2, M>;

template <int M, class GradFn>
Eigen::Matrix<double, M, 1> divergence_operator(const SurfacePatch& surface, FormKind kind,
                                                ParamPoint p, const OperatorOptions& opts,
                                                GradFn&& grads)
{
    const double h = opts.step;
    for (double s : {h, -h}) {
        if (!surface.domain.contains({p.u + s, p.v}) || !surface.domain.contains({p.u, p.v + s})) {
            throw GeometryError(ErrorKind::StencilOutsideDomain,
                                surface.name + ": finite-difference stencil leaves the domain");
        }
    }

    // Flux w^j = sqrt|f| f^{ij} phi_i, returned as a 2 x M block (row j).
    auto flux = [&](ParamPoint q) -> GradientBlock<M> {
        const LocalFrame fr = frame_at(surface, kind, q, opts.eps_K);
        const SymTensor2& f = select(fr.bundle, kind);
        const double d = f.det();
        if (std::abs(d) < 1e-14) {
            throw GeometryError(ErrorKind::SingularForm, surface.name + ": |det F| < 1e-14");
        }
        const double root = std::sqrt(std::abs(d));
        Mat2 inv;
        inv << f.f22 / d, -f.f12 / d, -f.f12 / d, f.f11 / d;
        const GradientBlock<M> g = grads(q, fr);
        return root * inv * g;
    };

    auto central = [&](double s) -> Eigen::Matrix<double, M, 1> {
        const GradientBlock<M> up = flux({p.u + s, p.v});
        const GradientBlock<M> um = flux({p.u - s, p.v});
        const GradientBlock<M> vp = flux({p.u, p.v + s});
        const GradientBlock<M> vm = flux({p.u, p.v - s});
        return ((up.row(0) - um.row(0)) + (vp.row(1) - vm.row(1))).transpose() / (2.0 * s);
    };
    const Eigen::Matrix<double, M, 1> div = (4.0 * central(0.5 * h) - central(h)) / 3.0;

    const LocalFrame centre = frame_at(surface, kind, p, opts.eps_K);
    const double root = std::sqrt(std::abs(select(centre.bundle, kind).det()));
    return -div / root;
}

} // namespace

double laplace_beltrami(const SurfacePatch& surface, FormKind form, const ScalarField& phi,
                        ParamPoint p, const OperatorOptions& opts)
{
    return divergence_operator<1>(surface, form, p, opts,
                                  [&](ParamPoint q, const LocalFrame&) {
                                      return GradientBlock<1>(phi.gradient(q));
                                  })(0);
}

OperatorSample delta3_position(const SurfacePatch& surface, ParamPoint p,
                               const OperatorOptions& opts)
{
    OperatorSample out;
    out.point = p;
    out.value = divergence_operator<3>(surface, FormKind::III, p, opts,
                                       [](ParamPoint, const LocalFrame& fr) {
                                           GradientBlock<3> g;
                                           g.row(0) = fr.jet.x_u.transpose();
                                           g.row(1) = fr.jet.x_v.transpose();
                                           return g;
                                       });
    const Jet2 jet = eval_jet(surface, p);
    const FormBundle fb = form_bundle(jet);
    out.x = jet.x;
    out.K = fb.K;
    out.H = fb.H;
    out.n = fb.n;
    return out;
}

Vec3 delta3_gauss(const SurfacePatch& surface, ParamPoint p, const OperatorOptions& opts)
{
    return divergence_operator<3>(surface, FormKind::III, p, opts,
                                  [](ParamPoint, const LocalFrame& fr) {
                                      const auto [n_u, n_v] =
                                          gauss_map_derivatives(fr.jet, fr.bundle);
                                      GradientBlock<3> g;
                                      g.row(0) = n_u.transpose();
                                      g.row(1) = n_v.transpose();
                                      return g;
                                  });
}

IdentityCheck position_identity(const SurfacePatch& surface, ParamPoint p,
                                const OperatorOptions& opts)
{
    IdentityCheck out;
    out.lhs = delta3_position(surface, p, opts).value;

    auto ratio = [&](ParamPoint q) {
        const FormBundle fb = form_bundle(eval_jet(surface, q));
        if (!parabolic_guard(fb, opts.eps_K)) {
            throw GeometryError(ErrorKind::SingularForm, surface.name + ": 2H/K undefined");
        }
        return 2.0 * fb.H / fb.K;
    };
    const double h = opts.step;
    auto derivative = [&](double eu, double ev) {
        auto d = [&](double s) {
            return (ratio({p.u + s * eu, p.v + s * ev}) - ratio({p.u - s * eu, p.v - s * ev})) /
                   (2.0 * s);
        };
        return (4.0 * d(0.5 * h) - d(h)) / 3.0;
    };
    const Vec2 dratio(derivative(1.0, 0.0), derivative(0.0, 1.0));

    const Jet2 jet = eval_jet(surface, p);
    const FormBundle fb = form_bundle(jet);
    const auto [n_u, n_v] = gauss_map_derivatives(jet, fb);
    for (int k = 0; k < 3; ++k) {
        out.rhs[k] = nabla(fb.e, dratio, Vec2(n_u[k], n_v[k]));
    }
    out.rhs -= ratio(p) * fb.n;
    out.residual = (out.lhs - out.rhs).norm();
    return out;
}

} // namespace beltrami
