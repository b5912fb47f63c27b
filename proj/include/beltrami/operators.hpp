#pragma once

#include <functional>
#include <string>

#include "beltrami/forms.hpp"
#include "beltrami/surface.hpp"

namespace beltrami {

enum class FormKind { I, II, III };

std::string to_string(FormKind kind);

/// A function on the parameter domain together with its chart gradient. The
/// Hessian is optional; only the closed-form quadric operators need it.
struct ScalarField {
    std::string name;
    std::function<double(ParamPoint)> value;
    std::function<Vec2(ParamPoint)> gradient;
    std::function<Mat2(ParamPoint)> hessian;
};

ScalarField constant_field(double c);

/// u^i v^j in chart coordinates.
ScalarField monomial_field(int i, int j);

/// alpha * f + beta * g
ScalarField linear_combination(double alpha, const ScalarField& f, double beta,
                               const ScalarField& g);

/// k-th Cartesian coordinate of the position vector.
ScalarField coordinate_field(const SurfacePatch& surface, int k);

/// k-th component of the Gauss map.
ScalarField gauss_field(const SurfacePatch& surface, int k);

struct OperatorOptions {
    double step{1e-4};
    double eps_K{1e-6};
};

/// F^{ij} phi_i psi_j for a nondegenerate symmetric form F.
double nabla(const SymTensor2& form, const Vec2& dphi, const Vec2& dpsi);

/// -(1/sqrt|f|) d_j (sqrt|f| F^{ij} phi_i). The flux w^j is computed from jets
/// at stencil points and differentiated by central differences with one
/// Richardson level.
double laplace_beltrami(const SurfacePatch& surface, FormKind form, const ScalarField& phi,
                        ParamPoint p, const OperatorOptions& opts = {});

struct OperatorSample {
    ParamPoint point;
    Vec3 x{Vec3::Zero()};
    Vec3 value{Vec3::Zero()};  // Delta^III x
    double K{0.0};
    double H{0.0};
    Vec3 n{Vec3::UnitZ()};
};

OperatorSample delta3_position(const SurfacePatch& surface, ParamPoint p,
                               const OperatorOptions& opts = {});

/// Delta^III n; equals 2n on every non-parabolic surface.
Vec3 delta3_gauss(const SurfacePatch& surface, ParamPoint p, const OperatorOptions& opts = {});

struct IdentityCheck {
    Vec3 lhs{Vec3::Zero()};  // Delta^III x
    Vec3 rhs{Vec3::Zero()};  // nabla^III(2H/K, n) - (2H/K) n
    double residual{0.0};
};

/// Compares Delta^III x with nabla^III(2H/K, n) - (2H/K) n at p. The gradient
/// of 2H/K comes from central differences of the curvature ratio.
IdentityCheck position_identity(const SurfacePatch& surface, ParamPoint p,
                                const OperatorOptions& opts = {});

} // namespace beltrami
