#include "beltrami/catalog.hpp"

#include <cmath>
#include <numbers>

namespace beltrami {

constexpr double kPi = std::numbers::pi;

SurfacePatch sphere(double r, const Vec3& center, std::optional<Domain> domain)
{
    SurfacePatch s;
    s.name = "sphere";
    s.family = "sphere";
    s.params = {{"r", r}, {"cx", center.x()}, {"cy", center.y()}, {"cz", center.z()}};
    s.domain = domain.value_or(Domain{0.0, 2.0 * kPi, -1.2, 1.2});
    s.evaluator = [r, center](ParamPoint p) {
        const double cu = std::cos(p.u), su = std::sin(p.u);
        const double cv = std::cos(p.v), sv = std::sin(p.v);
        Jet2 j;
        j.x = center + r * Vec3(cu * cv, su * cv, sv);
        j.x_u = r * Vec3(-su * cv, cu * cv, 0.0);
        j.x_v = r * Vec3(-cu * sv, -su * sv, cv);
        j.x_uu = r * Vec3(-cu * cv, -su * cv, 0.0);
        j.x_uv = r * Vec3(su * sv, -cu * sv, 0.0);
        j.x_vv = r * Vec3(-cu * cv, -su * cv, -sv);
        return j;
    };
    return s;
}

SurfacePatch helicoid(const HelicoidParams& hp, std::optional<Domain> domain)
{
    SurfacePatch s;
    s.name = "helicoid";
    s.family = "helicoid";
    s.params = {{"c5", hp.c5}, {"lambda", hp.lambda}, {"c2", hp.c2}, {"c4", hp.c4}, {"c6", hp.c6}};
    s.domain = domain.value_or(Domain{0.0, kPi, 0.5, 2.0});
    s.ruled = true;
    s.evaluator = [hp](ParamPoint p) {
        const double cs = std::cos(p.u), ss = std::sin(p.u);
        const double rad = hp.lambda + p.v;
        Jet2 j;
        j.x = Vec3(hp.c2 + rad * cs, hp.c4 + rad * ss, hp.c5 * p.u + hp.c6);
        j.x_u = Vec3(-rad * ss, rad * cs, hp.c5);
        j.x_v = Vec3(cs, ss, 0.0);
        j.x_uu = Vec3(-rad * cs, -rad * ss, 0.0);
        j.x_uv = Vec3(-ss, cs, 0.0);
        j.x_vv = Vec3::Zero();
        return j;
    };
    return s;
}

SurfacePatch catenoid(double c, std::optional<Domain> domain)
{
    SurfacePatch s;
    s.name = "catenoid";
    s.family = "catenoid";
    s.params = {{"c", c}};
    s.domain = domain.value_or(Domain{0.0, 2.0 * kPi, -1.0, 1.0});
    s.evaluator = [c](ParamPoint p) {
        const double cu = std::cos(p.u), su = std::sin(p.u);
        const double ch = std::cosh(p.v / c), sh = std::sinh(p.v / c);
        Jet2 j;
        j.x = Vec3(c * ch * cu, c * ch * su, p.v);
        j.x_u = Vec3(-c * ch * su, c * ch * cu, 0.0);
        j.x_v = Vec3(sh * cu, sh * su, 1.0);
        j.x_uu = Vec3(-c * ch * cu, -c * ch * su, 0.0);
        j.x_uv = Vec3(-sh * su, sh * cu, 0.0);
        j.x_vv = Vec3(ch * cu / c, ch * su / c, 0.0);
        return j;
    };
    return s;
}

SurfacePatch plane(std::optional<Domain> domain)
{
    SurfacePatch s;
    s.name = "plane";
    s.family = "plane";
    s.domain = domain.value_or(Domain{-1.0, 1.0, -1.0, 1.0});
    s.evaluator = [](ParamPoint p) {
        Jet2 j;
        j.x = Vec3(p.u, p.v, 0.0);
        j.x_u = Vec3::UnitX();
        j.x_v = Vec3::UnitY();
        return j;
    };
    return s;
}

SurfacePatch cylinder(double r, std::optional<Domain> domain)
{
    SurfacePatch s;
    s.name = "cylinder";
    s.family = "cylinder";
    s.params = {{"r", r}};
    s.domain = domain.value_or(Domain{0.0, 2.0 * kPi, -1.0, 1.0});
    s.evaluator = [r](ParamPoint p) {
        const double cu = std::cos(p.u), su = std::sin(p.u);
        Jet2 j;
        j.x = Vec3(r * cu, r * su, p.v);
        j.x_u = Vec3(-r * su, r * cu, 0.0);
        j.x_v = Vec3::UnitZ();
        j.x_uu = Vec3(-r * cu, -r * su, 0.0);
        return j;
    };
    return s;
}

} // namespace beltrami
