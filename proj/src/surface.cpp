#include "beltrami/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "beltrami/errors.hpp"

namespace beltrami {

namespace {

std::string describe(ParamPoint p)
{
    std::ostringstream os;
    os << "(" << p.u << ", " << p.v << ")";
    return os.str();
}

bool finite(const Vec3& v) { return v.allFinite(); }

} // namespace

Jet2 eval_jet(const SurfacePatch& surface, ParamPoint p)
{
    if (!std::isfinite(p.u) || !std::isfinite(p.v) || !surface.domain.contains(p)) {
        throw GeometryError(ErrorKind::OutOfDomain,
                            surface.name + " evaluated at " + describe(p));
    }
    Jet2 jet = surface.evaluator(p);
    if (!finite(jet.x) || !finite(jet.x_u) || !finite(jet.x_v) || !finite(jet.x_uu) ||
        !finite(jet.x_uv) || !finite(jet.x_vv)) {
        throw GeometryError(ErrorKind::DegenerateImmersion,
                            surface.name + " produced a non-finite jet at " + describe(p));
    }
    if (jet.x_u.cross(jet.x_v).norm() < 1e-12) {
        throw GeometryError(ErrorKind::DegenerateImmersion,
                            surface.name + " is not immersive at " + describe(p));
    }
    return jet;
}

bool is_admissible(const SurfacePatch& surface, ParamPoint p)
{
    if (!surface.domain.contains(p)) {
        return false;
    }
    return !surface.admissible || surface.admissible(p);
}

Jet2 fd_jet(const PositionEvaluator& position, ParamPoint p, double h)
{
    auto at = [&](double du, double dv) { return position({p.u + du, p.v + dv}); };

    // First derivatives: D(h) = (f(+h) - f(-h)) / 2h, R = (4 D(h/2) - D(h)) / 3.
    auto first = [&](double eu, double ev) -> Vec3 {
        auto d = [&](double s) -> Vec3 { return (at(s * eu, s * ev) - at(-s * eu, -s * ev)) / (2.0 * s); };
        return (4.0 * d(0.5 * h) - d(h)) / 3.0;
    };
    auto second = [&](double eu, double ev) -> Vec3 {
        const Vec3 c = at(0.0, 0.0);
        auto d = [&](double s) -> Vec3 {
            return (at(s * eu, s * ev) - 2.0 * c + at(-s * eu, -s * ev)) / (s * s);
        };
        return (4.0 * d(0.5 * h) - d(h)) / 3.0;
    };
    auto mixed = [&]() -> Vec3 {
        auto d = [&](double s) -> Vec3 {
            return (at(s, s) - at(s, -s) - at(-s, s) + at(-s, -s)) / (4.0 * s * s);
        };
        return (4.0 * d(0.5 * h) - d(h)) / 3.0;
    };

    Jet2 jet;
    jet.x = at(0.0, 0.0);
    jet.x_u = first(1.0, 0.0);
    jet.x_v = first(0.0, 1.0);
    jet.x_uu = second(1.0, 0.0);
    jet.x_vv = second(0.0, 1.0);
    jet.x_uv = mixed();
    return jet;
}

SurfacePatch surface_from_position(std::string name, PositionEvaluator position,
                                   Domain domain, double h)
{
    SurfacePatch patch;
    patch.name = std::move(name);
    patch.family = "custom";
    patch.domain = domain;
    patch.evaluator = [position = std::move(position), h](ParamPoint p) {
        return fd_jet(position, p, h);
    };
    return patch;
}

ParamPoint sheared_point(ParamPoint original, double shear)
{
    return {original.u - shear * original.v, original.v};
}

SurfacePatch sheared(const SurfacePatch& surface, double shear)
{
    const Domain& d = surface.domain;
    // u' in [u0 - shear v, u1 - shear v] for every v in [v0, v1].
    const double lo = std::max(d.u0 - shear * d.v0, d.u0 - shear * d.v1);
    const double hi = std::min(d.u1 - shear * d.v0, d.u1 - shear * d.v1);
    if (!(hi > lo)) {
        throw GeometryError(ErrorKind::OutOfDomain,
                            "shear leaves no rectangle inside the domain of " + surface.name);
    }

    SurfacePatch out = surface;
    out.name = surface.name + "+shear";
    out.domain = {lo, hi, d.v0, d.v1};
    const auto map = [shear](ParamPoint p) { return ParamPoint{p.u + shear * p.v, p.v}; };
    out.evaluator = [base = surface, shear, map](ParamPoint p) {
        const Jet2 j = eval_jet(base, map(p));
        Jet2 r;
        r.x = j.x;
        r.x_u = j.x_u;
        r.x_v = shear * j.x_u + j.x_v;
        r.x_uu = j.x_uu;
        r.x_uv = shear * j.x_uu + j.x_uv;
        r.x_vv = shear * shear * j.x_uu + 2.0 * shear * j.x_uv + j.x_vv;
        return r;
    };
    if (surface.admissible) {
        out.admissible = [pred = surface.admissible, map](ParamPoint p) { return pred(map(p)); };
    }
    return out;
}

SurfacePatch swapped(const SurfacePatch& surface)
{
    SurfacePatch out = surface;
    out.name = surface.name + "+swap";
    out.domain = {surface.domain.v0, surface.domain.v1, surface.domain.u0, surface.domain.u1};
    out.evaluator = [base = surface](ParamPoint p) {
        const Jet2 j = eval_jet(base, {p.v, p.u});
        Jet2 r;
        r.x = j.x;
        r.x_u = j.x_v;
        r.x_v = j.x_u;
        r.x_uu = j.x_vv;
        r.x_uv = j.x_uv;
        r.x_vv = j.x_uu;
        return r;
    };
    if (surface.admissible) {
        out.admissible = [pred = surface.admissible](ParamPoint p) { return pred({p.v, p.u}); };
    }
    // The striction guard reads <x_s, x_s>, which moves to the second slot.
    out.ruled = false;
    return out;
}

SurfacePatch transformed(const SurfacePatch& surface, const Mat3& rotation, const Vec3& shift)
{
    SurfacePatch out = surface;
    out.name = surface.name + "+rigid";
    out.evaluator = [base = surface, rotation, shift](ParamPoint p) {
        const Jet2 j = eval_jet(base, p);
        Jet2 r;
        r.x = rotation * j.x + shift;
        r.x_u = rotation * j.x_u;
        r.x_v = rotation * j.x_v;
        r.x_uu = rotation * j.x_uu;
        r.x_uv = rotation * j.x_uv;
        r.x_vv = rotation * j.x_vv;
        return r;
    };
    return out;
}

} // namespace beltrami
