#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beltrami/operators.hpp"
#include "beltrami/surface.hpp"

namespace beltrami {

struct SampleOptions {
    int n_u{6};
    int n_v{6};
    double eps_K{1e-6};
    double eps_q{1e-6};
};

/// Cell-centred uniform grid over the domain, keeping only points that are
/// admissible, non-parabolic and (for ruled charts) away from the striction
/// region q < eps_q. Throws InsufficientSamples below 6 survivors.
std::vector<ParamPoint> sample_domain(const SurfacePatch& surface, const SampleOptions& opts);

enum class FitMode { Strict, Affine };

std::string to_string(FitMode mode);

struct LambdaFit {
    Mat3 lambda{Mat3::Zero()};
    std::optional<Vec3> translation;  // affine mode only
    double residual_max{0.0};
    double residual_rms{0.0};
    double condition{1.0};  // of the normal-equation matrix
    bool used_qr{false};
    int n_samples{0};
    FitMode mode{FitMode::Strict};
};

/// Pair of position x and operator value Delta^III x.
struct LambdaSample {
    Vec3 x;
    Vec3 delta;
};

/// Least-squares fit of Delta^III x = Lambda x (+ B). Residuals are normalised
/// per sample by (1 + |Delta^III x|).
LambdaFit fit_lambda(const std::vector<LambdaSample>& samples, FitMode mode = FitMode::Strict);

enum class VerdictKind { NullType, SphereType, GeneralLambda, NotCoordinateFiniteType };

std::string to_string(VerdictKind kind);

struct Verdict {
    VerdictKind kind{VerdictKind::NotCoordinateFiniteType};
    LambdaFit fit;
    double threshold{1e-4};
};

Verdict classify(const LambdaFit& fit, double tau = 1e-4);

/// Samples, evaluates Delta^III x at every point and fits Lambda.
struct SurfaceAnalysis {
    std::vector<ParamPoint> points;
    std::vector<LambdaSample> samples;
    Verdict verdict;
};

SurfaceAnalysis analyze_surface(const SurfacePatch& surface, const SampleOptions& sampling,
                                FitMode mode = FitMode::Strict, double tau = 1e-4,
                                double fd_step = 1e-4);

} // namespace beltrami
