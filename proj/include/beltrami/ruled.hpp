#pragma once

#include <array>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "beltrami/operators.hpp"
#include "beltrami/surface.hpp"
#include "beltrami/tpoly.hpp"

namespace beltrami {

/// Value and first two derivatives of a space curve at one parameter value.
struct CurveJet {
    Vec3 value{Vec3::Zero()};
    Vec3 d1{Vec3::Zero()};
    Vec3 d2{Vec3::Zero()};
};

using CurveEvaluator = std::function<CurveJet(double)>;

/// Directrix alpha and unit ruling field beta of x(s,t) = alpha(s) + t beta(s),
/// with s the arc length of the spherical curve beta.
struct CurvePair {
    std::string name;
    std::map<std::string, double> params;
    CurveEvaluator alpha;
    CurveEvaluator beta;
};

struct NormalizationCheck {
    double alpha_beta{0.0};    // <alpha', beta>
    double beta_beta{0.0};     // <beta, beta> - 1
    double betap_betap{0.0};   // <beta', beta'> - 1
    bool ok(double tol = 1e-10) const;
};

NormalizationCheck check_normalization(const CurvePair& curves, double s);

/// Ruled chart over the domain (u = s, v = t). Checks the normalisation at
/// nine s-values across the domain; throws NormalizationViolated otherwise.
SurfacePatch ruled_surface(const CurvePair& curves, const Domain& domain);

/// The six scalar invariants and their s-derivatives.
struct RuledInvariants {
    double kappa{0.0}, lambda{0.0}, mu{0.0}, nu{0.0}, rho{0.0}, A{0.0};
    double dkappa{0.0}, dlambda{0.0}, dmu{0.0}, dnu{0.0}, drho{0.0}, dA{0.0};

    double q(double t) const { return t * t + 2.0 * lambda * t + kappa; }
    double p(double t) const { return mu * t * t + nu * t + rho; }
    /// K = -A^2 / q^2
    double gauss_curvature(double t) const;
};

/// Invariants at s; s-derivatives by central differences with the given step.
RuledInvariants ruled_invariants(const CurvePair& curves, double s, double step = 1e-5);

/// Coefficients Q1..Q5 of
///   Delta^III = Q1 d_ss + Q2 d_st + Q3 d_s + Q4 d_t + Q5 d_tt
/// as polynomials in t at fixed s. Index 0 holds Q1.
using OperatorCoefficients = std::array<TPoly, 5>;

/// Closed forms of Q1..Q5 in terms of the invariants.
OperatorCoefficients q_closed_forms(const RuledInvariants& inv);

/// Recovers Q1..Q5 from the numeric operator applied to the probe fields
/// s, t, s^2, t^2, st at (s, t_k), then fits each through the nodes with a
/// degree-6 Vandermonde solve.
OperatorCoefficients probe_coefficients(const SurfacePatch& surface, double s,
                                        std::span<const double> t_nodes,
                                        const OperatorOptions& opts = {}, double eps_q = 1e-6);

/// The t^1 equation has two printed variants for its beta' coefficient:
/// (k'A/2 + 2 kappa nu + 4 lambda rho) A and (k'A/2 + 3 kappa nu + 3 lambda rho) A.
enum class LinearTermVariant { Printed2_4, Printed3_3 };

std::string to_string(LinearTermVariant variant);

/// Residual vectors of the coefficient equations of A^4 (Delta^III x - Lambda x),
/// ordered by power of t: index 0 is t^5, index 5 is t^0.
std::array<Vec3, 6> coefficient_equations(const RuledInvariants& inv, const CurveJet& beta,
                                          const CurveJet& alpha, const Mat3& lambda_matrix,
                                          LinearTermVariant variant = LinearTermVariant::Printed3_3);

/// t^k coefficient of A^4 (Delta^III x - Lambda x) assembled from operator
/// coefficients, k in [0, 5].
Vec3 expansion_coefficient(const OperatorCoefficients& Q, double A, const CurveJet& beta,
                           const CurveJet& alpha, const Mat3& lambda_matrix, int k);

/// Delta^III x = Q1 a'' + Q2 b' + Q3 a' + Q4 b + (Q1 b'' + Q3 b') t.
Vec3 assemble_delta3(const OperatorCoefficients& Q, const CurveJet& beta, const CurveJet& alpha,
                     double t);

struct VariantAdjudication {
    double deviation_2_4{0.0};
    double deviation_3_3{0.0};
    double tolerance{0.0};
    bool matches_2_4{false};
    bool matches_3_3{false};
    bool exactly_one() const { return matches_2_4 != matches_3_3; }
};

/// Decides which printed t^1 variant agrees with the probed operator.
VariantAdjudication adjudicate_linear_term(const CurvePair& curves, const OperatorCoefficients& probed,
                                           double s, double rel_tol = 1e-4);

/// max_k |probed_k - closed_k| / max(1, max_k |closed_k|), over all five Q.
double coefficient_deviation(const OperatorCoefficients& closed, const OperatorCoefficients& probed);

// Catalog of curve pairs.

/// alpha = (c2 + lambda cos s, c4 + lambda sin s, c5 s + c6), beta = (cos s, sin s, 0).
CurvePair helicoid_pair(double c5 = 1.0, double lambda = 0.0, double c2 = 0.0, double c4 = 0.0,
                        double c6 = 0.0);

/// alpha = (sin 2s, cos 2s, s) shifted along beta = (cos s, sin s, 0) so that
/// <alpha', beta> = 0. Non-helicoidal.
CurvePair perturbed_pair();

struct SmallCirclePairParams {
    double phi{1.0};  // polar angle of the circle traced by beta
    double p0{0.2}, p1{0.1}, k1{1.0};  // lambda(s) = p0 + p1 sin(k1 s)
    double q0{0.8}, q1{0.2}, k2{0.7};  // A(s) = q0 + q1 cos(k2 s)
    Mat3 rotation{Mat3::Identity()};
};

/// beta runs along a small circle (mu != 0); alpha' = lambda(s) beta' + A(s) beta x beta'.
/// alpha itself is obtained by Gauss-Legendre quadrature from alpha(0) = 0.
CurvePair small_circle_pair(const SmallCirclePairParams& params);

CurvePair random_curve_pair(std::mt19937_64& rng);

} // namespace beltrami
