#pragma once

#include <optional>

#include "beltrami/surface.hpp"

namespace beltrami {

/// x(u,v) = center + r (cos u cos v, sin u cos v, sin v); default domain keeps
/// away from the poles.
SurfacePatch sphere(double r, const Vec3& center = Vec3::Zero(),
                    std::optional<Domain> domain = std::nullopt);

struct HelicoidParams {
    double c5{1.0};
    double lambda{0.0};
    double c2{0.0};
    double c4{0.0};
    double c6{0.0};
};

/// x(s,t) = (c2 + (lambda + t) cos s, c4 + (lambda + t) sin s, c5 s + c6).
SurfacePatch helicoid(const HelicoidParams& params = {},
                      std::optional<Domain> domain = std::nullopt);

/// x(u,v) = (c cosh(v/c) cos u, c cosh(v/c) sin u, v).
SurfacePatch catenoid(double c = 1.0, std::optional<Domain> domain = std::nullopt);

SurfacePatch plane(std::optional<Domain> domain = std::nullopt);

/// x(u,v) = (r cos u, r sin u, v). Parabolic everywhere.
SurfacePatch cylinder(double r = 1.0, std::optional<Domain> domain = std::nullopt);

} // namespace beltrami
