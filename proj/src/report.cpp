#include "beltrami/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace beltrami {

using nlohmann::json;

std::string format_number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<double> lambda_entries(const LambdaFit& fit)
{
    std::vector<double> out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out.push_back(fit.lambda(i, j));
        }
        if (fit.translation) {
            out.push_back((*fit.translation)[i]);
        }
    }
    return out;
}

json coeff_table(const OperatorCoefficients& Q)
{
    json t = json::array();
    for (const TPoly& p : Q) {
        json row = json::array();
        for (int k = 0; k <= TPoly::kMaxDegree; ++k) {
            row.push_back(p.coeff(k));
        }
        t.push_back(row);
    }
    return t;
}

} // namespace

json fit_report_json(const SurfacePatch& surface, const Verdict& verdict)
{
    const LambdaFit& fit = verdict.fit;
    json j;
    j["schema"] = kReportSchema;
    j["surface"] = surface.name;
    j["family"] = surface.family;
    j["params"] = surface.params;
    j["domain"] = {surface.domain.u0, surface.domain.u1, surface.domain.v0, surface.domain.v1};
    j["mode"] = to_string(fit.mode);
    j["affine_extension"] = fit.mode == FitMode::Affine;
    j["lambda"] = lambda_entries(fit);
    j["residual_max"] = fit.residual_max;
    j["residual_rms"] = fit.residual_rms;
    j["verdict"] = to_string(verdict.kind);
    j["n_samples"] = fit.n_samples;
    j["tau"] = verdict.threshold;
    j["condition"] = fit.condition;
    j["solver"] = fit.used_qr ? "qr" : "cholesky";
    return j;
}

std::string fit_report_csv_header()
{
    return "surface,family,mode,l11,l12,l13,l21,l22,l23,l31,l32,l33,b1,b2,b3,"
           "residual_max,residual_rms,verdict,n_samples,tau";
}

std::string fit_report_csv_row(const SurfacePatch& surface, const Verdict& verdict)
{
    const LambdaFit& fit = verdict.fit;
    std::ostringstream os;
    os << surface.name << ',' << surface.family << ',' << to_string(fit.mode);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            os << ',' << format_number(fit.lambda(i, j));
        }
    }
    for (int i = 0; i < 3; ++i) {
        os << ',';
        if (fit.translation) {
            os << format_number((*fit.translation)[i]);
        }
    }
    os << ',' << format_number(fit.residual_max) << ',' << format_number(fit.residual_rms) << ','
       << to_string(verdict.kind) << ',' << fit.n_samples << ',' << format_number(verdict.threshold);
    return os.str();
}

RuledCoefficientReport ruled_coefficient_report(const CurvePair& curves, const Domain& domain,
                                                double s, int n_nodes, const OperatorOptions& opts)
{
    const SurfacePatch surface = ruled_surface(curves, domain);
    // Keep the nodes strictly inside the t-range so every stencil fits.
    const double margin = 0.05 * domain.height();
    const std::vector<double> nodes = chebyshev_nodes(domain.v0 + margin, domain.v1 - margin, n_nodes);

    RuledCoefficientReport r;
    r.surface = surface.name;
    r.s = s;
    r.closed = q_closed_forms(ruled_invariants(curves, s));
    r.probed = probe_coefficients(surface, s, nodes, opts);
    r.max_deviation = coefficient_deviation(r.closed, r.probed);
    r.linear_term = adjudicate_linear_term(curves, r.probed, s);
    return r;
}

json ruled_report_json(const RuledCoefficientReport& r)
{
    json j;
    j["schema"] = kReportSchema;
    j["surface"] = r.surface;
    j["s"] = r.s;
    j["closed"] = coeff_table(r.closed);
    j["probed"] = coeff_table(r.probed);
    j["max_deviation"] = r.max_deviation;
    std::string match = "none";
    if (r.linear_term.matches_2_4 && r.linear_term.matches_3_3) {
        match = "both";
    } else if (r.linear_term.matches_3_3) {
        match = to_string(LinearTermVariant::Printed3_3);
    } else if (r.linear_term.matches_2_4) {
        match = to_string(LinearTermVariant::Printed2_4);
    }
    j["linear_term"] = {{"deviation_2_4", r.linear_term.deviation_2_4},
                        {"deviation_3_3", r.linear_term.deviation_3_3},
                        {"tolerance", r.linear_term.tolerance},
                        {"matches", match}};
    return j;
}

std::string quadric_table_csv_header()
{
    return "family,a,b,c,verdict,residual_max,residual_rms,identity_max,printed_identity2_max,"
           "operator_deviation";
}

std::string quadric_table_csv_row(const QuadricTableRow& row)
{
    std::ostringstream os;
    os << row.family << ',' << format_number(row.a) << ',' << format_number(row.b) << ','
       << format_number(row.c) << ',' << row.verdict << ',' << format_number(row.residual_max) << ','
       << format_number(row.residual_rms) << ',' << format_number(row.identity_max) << ','
       << format_number(row.printed_identity2_max) << ',' << format_number(row.operator_deviation);
    return os.str();
}

json quadric_table_json(const QuadricTableRow& row)
{
    return {{"schema", kReportSchema},
            {"family", row.family},
            {"a", row.a},
            {"b", row.b},
            {"c", row.c},
            {"verdict", row.verdict},
            {"residual_max", row.residual_max},
            {"residual_rms", row.residual_rms},
            {"identity_max", row.identity_max},
            {"printed_identity2_max", row.printed_identity2_max},
            {"operator_deviation", row.operator_deviation},
            {"x3_reading", "actual_coordinate"}};
}

QuadricTableRow quadric_table_row(const Quadric1Params& p, const SampleOptions& sampling, double tau,
                                  double fd_step)
{
    const SurfacePatch surface = quadric1_surface(p);
    const SurfaceAnalysis an = analyze_surface(surface, sampling, FitMode::Strict, tau, fd_step);
    QuadricTableRow row{"quadric1", p.a, p.b, p.c, to_string(an.verdict.kind),
                        an.verdict.fit.residual_max, an.verdict.fit.residual_rms};
    const OperatorOptions op{fd_step, sampling.eps_K};
    const ScalarField fu = monomial_field(1, 0);
    const ScalarField fv = monomial_field(0, 1);
    for (const ParamPoint& q : an.points) {
        const ABCIdentities ids = abc_identities(p, q.u, q.v);
        row.identity_max = std::max(row.identity_max, ids.max());
        row.printed_identity2_max = std::max(row.printed_identity2_max, ids.printed_second);
        const Vec2 closed = quadric1_delta3_coords(p, q.u, q.v);
        row.operator_deviation =
            std::max({row.operator_deviation,
                      std::abs(closed[0] - laplace_beltrami(surface, FormKind::III, fu, q, op)),
                      std::abs(closed[1] - laplace_beltrami(surface, FormKind::III, fv, q, op))});
    }
    return row;
}

QuadricTableRow quadric_table_row(const Quadric2Params& p, const SampleOptions& sampling, double tau,
                                  double fd_step)
{
    const SurfacePatch surface = quadric2_surface(p);
    const SurfaceAnalysis an = analyze_surface(surface, sampling, FitMode::Strict, tau, fd_step);
    QuadricTableRow row{"quadric2", p.a, p.b, 0.0, to_string(an.verdict.kind),
                        an.verdict.fit.residual_max, an.verdict.fit.residual_rms};
    const OperatorOptions op{fd_step, sampling.eps_K};
    const ScalarField fu = monomial_field(1, 0);
    const ScalarField fv = monomial_field(0, 1);
    for (const ParamPoint& q : an.points) {
        const Vec2 closed = quadric2_delta3_coords(p, q.u, q.v);
        row.operator_deviation =
            std::max({row.operator_deviation,
                      std::abs(closed[0] - laplace_beltrami(surface, FormKind::III, fu, q, op)),
                      std::abs(closed[1] - laplace_beltrami(surface, FormKind::III, fv, q, op))});
    }
    return row;
}

} // namespace beltrami
