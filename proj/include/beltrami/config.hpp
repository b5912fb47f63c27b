#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "beltrami/ruled.hpp"
#include "beltrami/surface.hpp"

namespace beltrami {

/// Declarative description of a surface, either read from a JSON config file
/// or assembled from command-line flags.
///
///   {"name": "s2", "family": "sphere", "params": {"r": 2}, "domain": [0, 6.28, -1, 1]}
///
/// Families: sphere, helicoid, catenoid, plane, cylinder, ruled, quadric1,
/// quadric2, custom-grid. Ruled surfaces pick their curve pair with
/// "ruling": helicoid | perturbed | small-circle. Custom grids carry heights
/// "z" sampled on a uniform grid over the domain (rows along v, columns
/// along u) and are smoothed by a tensor Legendre least-squares fit of the
/// given "degree".
struct SurfaceSpec {
    std::string name{"sphere"};
    std::string family{"sphere"};
    std::map<std::string, double> params;
    std::optional<Domain> domain;
    std::string ruling{"helicoid"};
    std::vector<std::vector<double>> z;
    int degree{4};
    double jet_step{1e-3};
};

/// Throws GeometryError(ConfigError) on unknown families, unknown parameter
/// names, malformed domains or ragged grids.
SurfaceSpec parse_surface_spec(const nlohmann::json& j);
SurfaceSpec load_surface_spec(const std::string& path);

nlohmann::json to_json(const SurfaceSpec& spec);

const std::vector<std::string>& known_families();

SurfacePatch build_surface(const SurfaceSpec& spec);

/// Curve pair of a ruled spec.
CurvePair build_curve_pair(const SurfaceSpec& spec);

/// Default (s, t) rectangle for each ruling choice.
Domain default_ruled_domain(const std::string& ruling);

/// Height field fitted to a uniform grid of samples; the polynomial is a
/// tensor product of Legendre polynomials in the rescaled coordinates.
class LegendreHeightField {
public:
    LegendreHeightField(const Domain& domain, const std::vector<std::vector<double>>& z, int degree);

    double operator()(double u, double v) const;
    double fit_residual() const { return fit_residual_; }

private:
    Domain domain_;
    int degree_;
    std::vector<double> coeffs_;  // (degree+1)^2, index i*(degree+1)+j for P_i(u) P_j(v)
    double fit_residual_{0.0};
};

} // namespace beltrami
