#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace beltrami {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

struct ParamPoint {
    double u{0.0};
    double v{0.0};
};

/// Position and partial derivatives up to order two at one parameter point.
struct Jet2 {
    Vec3 x{Vec3::Zero()};
    Vec3 x_u{Vec3::Zero()};
    Vec3 x_v{Vec3::Zero()};
    Vec3 x_uu{Vec3::Zero()};
    Vec3 x_uv{Vec3::Zero()};
    Vec3 x_vv{Vec3::Zero()};
};

/// Closed parameter rectangle [u0,u1] x [v0,v1].
struct Domain {
    double u0{0.0};
    double u1{1.0};
    double v0{0.0};
    double v1{1.0};

    bool contains(ParamPoint p) const
    {
        return p.u >= u0 && p.u <= u1 && p.v >= v0 && p.v <= v1;
    }
    double width() const { return u1 - u0; }
    double height() const { return v1 - v0; }
};

using JetEvaluator = std::function<Jet2(ParamPoint)>;
using PositionEvaluator = std::function<Vec3(ParamPoint)>;
using PointPredicate = std::function<bool(ParamPoint)>;

/// A parametrised surface patch. The evaluator is only called on points of the
/// domain; eval_jet() enforces this and the immersion condition.
struct SurfacePatch {
    std::string name;
    std::string family;
    std::map<std::string, double> params;
    Domain domain;
    JetEvaluator evaluator;
    // Extra admissibility constraint inside the rectangle (e.g. the radicand
    // guards of the quadric charts). Empty means the whole rectangle.
    PointPredicate admissible;
    // Ruled charts x(s,t) = alpha(s) + t beta(s); enables the striction guard
    // q = <x_s, x_s> in the sampler.
    bool ruled{false};
};

Jet2 eval_jet(const SurfacePatch& surface, ParamPoint p);

bool is_admissible(const SurfacePatch& surface, ParamPoint p);

/// Second-order jet of a position evaluator by central differences with one
/// Richardson level (steps h and h/2).
Jet2 fd_jet(const PositionEvaluator& position, ParamPoint p, double h = 1e-4);

/// Wraps a plain position evaluator into a patch whose jets come from fd_jet().
SurfacePatch surface_from_position(std::string name, PositionEvaluator position,
                                   Domain domain, double h = 1e-4);

/// Chart change (u', v') -> (u' + shear v', v'). The new rectangle is the
/// largest one whose image stays inside the original domain.
SurfacePatch sheared(const SurfacePatch& surface, double shear = 0.3);

ParamPoint sheared_point(ParamPoint original, double shear = 0.3);

/// Chart with the parameters swapped, (u, v) -> (v, u). Reverses the normal.
SurfacePatch swapped(const SurfacePatch& surface);

/// Rigid motion x -> R x + shift applied to the whole patch.
SurfacePatch transformed(const SurfacePatch& surface, const Mat3& rotation,
                         const Vec3& shift = Vec3::Zero());

} // namespace beltrami
