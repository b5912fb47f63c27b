#include "beltrami/finite_type.hpp"

#include <algorithm>
#include <cmath>

#include "beltrami/errors.hpp"
#include "beltrami/forms.hpp"

namespace beltrami {

std::string to_string(FitMode mode)
{
    return mode == FitMode::Strict ? "strict" : "affine";
}

std::string to_string(VerdictKind kind)
{
    switch (kind) {
    case VerdictKind::NullType: return "NullType";
    case VerdictKind::SphereType: return "SphereType";
    case VerdictKind::GeneralLambda: return "GeneralLambda";
    case VerdictKind::NotCoordinateFiniteType: return "NotCoordinateFiniteType";
    }
    return "?";
}

std::vector<ParamPoint> sample_domain(const SurfacePatch& surface, const SampleOptions& opts)
{
    if (opts.n_u < 1 || opts.n_v < 1 || opts.n_u * opts.n_v < 9) {
        throw GeometryError(ErrorKind::ConfigError, "sample grid needs n_u * n_v >= 9");
    }
    const Domain& d = surface.domain;
    std::vector<ParamPoint> out;
    for (int i = 0; i < opts.n_u; ++i) {
        for (int j = 0; j < opts.n_v; ++j) {
            const ParamPoint p{d.u0 + (i + 0.5) * d.width() / opts.n_u,
                               d.v0 + (j + 0.5) * d.height() / opts.n_v};
            if (!is_admissible(surface, p)) {
                continue;
            }
            try {
                const Jet2 jet = eval_jet(surface, p);
                const FormBundle fb = form_bundle(jet);
                if (!parabolic_guard(fb, opts.eps_K)) {
                    continue;
                }
                if (surface.ruled && fb.g.f11 < opts.eps_q) {
                    continue;
                }
            } catch (const GeometryError&) {
                continue;
            }
            out.push_back(p);
        }
    }
    if (out.size() < 6) {
        throw GeometryError(ErrorKind::InsufficientSamples,
                            surface.name + ": only " + std::to_string(out.size()) +
                                " sample points survive the guards");
    }
    return out;
}

LambdaFit fit_lambda(const std::vector<LambdaSample>& samples, FitMode mode)
{
    const int cols = mode == FitMode::Strict ? 3 : 4;
    const int needed = mode == FitMode::Strict ? 6 : 8;
    const int n = static_cast<int>(samples.size());
    if (n < needed) {
        throw GeometryError(ErrorKind::InsufficientSamples,
                            "fit needs at least " + std::to_string(needed) + " samples");
    }

    // Three row problems share the design matrix: row i of Lambda solves
    // X * lambda_i^T = delta_i.
    Eigen::MatrixXd design(n, cols);
    Eigen::MatrixXd rhs(n, 3);
    for (int k = 0; k < n; ++k) {
        design.block(k, 0, 1, 3) = samples[k].x.transpose();
        if (cols == 4) {
            design(k, 3) = 1.0;
        }
        rhs.row(k) = samples[k].delta.transpose();
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < cols) {
        throw GeometryError(ErrorKind::RankDeficient,
                            "design matrix has numerical rank " + std::to_string(qr.rank()) +
                                " < " + std::to_string(cols));
    }

    LambdaFit fit;
    fit.mode = mode;
    fit.n_samples = n;

    const Eigen::MatrixXd normal = design.transpose() * design;
    const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(normal).eigenvalues();
    fit.condition = eig.maxCoeff() / std::max(eig.minCoeff(), std::numeric_limits<double>::min());

    Eigen::MatrixXd coeffs;
    if (fit.condition > 1e8) {
        fit.used_qr = true;
        coeffs = qr.solve(rhs);
    } else {
        coeffs = normal.llt().solve(design.transpose() * rhs);
    }
    // coeffs is cols x 3; column i holds row i of [Lambda | B].
    fit.lambda = coeffs.topRows(3).transpose();
    if (cols == 4) {
        fit.translation = coeffs.row(3).transpose();
    }

    double sum_sq = 0.0;
    for (int k = 0; k < n; ++k) {
        Vec3 r = samples[k].delta - fit.lambda * samples[k].x;
        if (fit.translation) {
            r -= *fit.translation;
        }
        const double rel = r.norm() / (1.0 + samples[k].delta.norm());
        fit.residual_max = std::max(fit.residual_max, rel);
        sum_sq += rel * rel;
    }
    fit.residual_rms = std::sqrt(sum_sq / n);
    return fit;
}

Verdict classify(const LambdaFit& fit, double tau)
{
    Verdict v;
    v.fit = fit;
    v.threshold = tau;
    if (!(fit.residual_max < tau)) {
        v.kind = VerdictKind::NotCoordinateFiniteType;
    } else if (fit.lambda.cwiseAbs().maxCoeff() < tau) {
        v.kind = VerdictKind::NullType;
    } else if ((fit.lambda - 2.0 * Mat3::Identity()).cwiseAbs().maxCoeff() < tau) {
        v.kind = VerdictKind::SphereType;
    } else {
        v.kind = VerdictKind::GeneralLambda;
    }
    return v;
}

SurfaceAnalysis analyze_surface(const SurfacePatch& surface, const SampleOptions& sampling,
                                FitMode mode, double tau, double fd_step)
{
    SurfaceAnalysis out;
    out.points = sample_domain(surface, sampling);
    const OperatorOptions op{fd_step, sampling.eps_K};
    out.samples.reserve(out.points.size());
    for (const ParamPoint& p : out.points) {
        const OperatorSample s = delta3_position(surface, p, op);
        out.samples.push_back({s.x, s.value});
    }
    out.verdict = classify(fit_lambda(out.samples, mode), tau);
    return out;
}

} // namespace beltrami
