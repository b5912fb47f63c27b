#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "beltrami/finite_type.hpp"
#include "beltrami/surface.hpp"

namespace beltrami {

struct AcceptanceOptions {
    std::uint64_t seed{7};
    SampleOptions sampling{};
    double tau{1e-4};
    double fd_step{1e-4};
    int random_points{100};
    int random_pairs{5};
};

struct CriterionResult {
    int id{0};
    std::string name;
    bool passed{false};
    std::string detail;
    nlohmann::json data;
};

constexpr int kCriterionCount = 10;

/// Runs one acceptance criterion (1..10). Geometry errors raised inside a
/// criterion are reported as a failure of that criterion.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// Catalog surfaces exercised by the identity suite and the chart-change check.
std::vector<SurfacePatch> catalog_surfaces(std::mt19937_64& rng);

/// Uniform random points inside the inner 90% of the domain that pass the
/// admissibility, parabolic and striction guards.
std::vector<ParamPoint> random_guarded_points(const SurfacePatch& surface, int count,
                                              std::mt19937_64& rng, double eps_K = 1e-6,
                                              double eps_q = 1e-6);

nlohmann::json to_json(const CriterionResult& result);

} // namespace beltrami
