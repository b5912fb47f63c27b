#pragma once

#include <random>
#include <vector>

#include <doctest.h>

#include "beltrami/catalog.hpp"
#include "beltrami/errors.hpp"
#include "beltrami/quadric.hpp"
#include "beltrami/ruled.hpp"
#include "beltrami/surface.hpp"

namespace testing {

using namespace beltrami;

inline PositionEvaluator position_of(const SurfacePatch& s)
{
    return [s](ParamPoint p) { return eval_jet(s, p).x; };
}

inline double max_abs(const Vec3& v) { return v.cwiseAbs().maxCoeff(); }

// Every analytic catalog surface with its default domain.
inline std::vector<SurfacePatch> analytic_catalog()
{
    HelicoidParams hp;
    hp.c5 = 1.3;
    hp.lambda = 0.4;
    hp.c2 = 0.2;
    hp.c4 = -0.1;
    hp.c6 = 0.5;
    return {sphere(2.0),
            helicoid(hp),
            catenoid(1.5),
            quadric1_surface({-1.0, -2.0, 1.0}),
            quadric1_surface({1.0, 2.0, -1.0}),
            quadric2_surface({1.0, 2.0}),
            ruled_surface(perturbed_pair(), Domain{0.0, 3.0, -1.0, 1.0}),
            ruled_surface(small_circle_pair({}), Domain{0.0, 2.0, -1.0, 1.0})};
}

template <class F>
ErrorKind kind_of(F&& f)
{
    try {
        f();
    } catch (const GeometryError& e) {
        return e.kind();
    }
    FAIL("no GeometryError raised");
    return ErrorKind::ConfigError;
}

} // namespace testing
