#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "beltrami/finite_type.hpp"
#include "beltrami/quadric.hpp"
#include "beltrami/ruled.hpp"
#include "beltrami/surface.hpp"

namespace beltrami {

constexpr int kReportSchema = 1;

/// {schema, surface, family, params, mode, lambda, residual_max, residual_rms,
///  verdict, n_samples, tau, condition, solver}. In affine mode `lambda` holds
/// the 12 entries of [Lambda | B] row-major.
nlohmann::json fit_report_json(const SurfacePatch& surface, const Verdict& verdict);

std::string fit_report_csv_header();
std::string fit_report_csv_row(const SurfacePatch& surface, const Verdict& verdict);

struct RuledCoefficientReport {
    std::string surface;
    double s{0.0};
    OperatorCoefficients closed;
    OperatorCoefficients probed;
    double max_deviation{0.0};
    VariantAdjudication linear_term;
};

RuledCoefficientReport ruled_coefficient_report(const CurvePair& curves, const Domain& domain,
                                                double s, int n_nodes = 8,
                                                const OperatorOptions& opts = {});

nlohmann::json ruled_report_json(const RuledCoefficientReport& report);

struct QuadricTableRow {
    std::string family;
    double a{0.0};
    double b{0.0};
    double c{0.0};
    std::string verdict;
    double residual_max{0.0};
    double residual_rms{0.0};
    double identity_max{0.0};          // kind I only
    double printed_identity2_max{0.0}; // kind I only
    double operator_deviation{0.0};    // closed-form vs generic operator on x1, x2
};

std::string quadric_table_csv_header();
std::string quadric_table_csv_row(const QuadricTableRow& row);
nlohmann::json quadric_table_json(const QuadricTableRow& row);

QuadricTableRow quadric_table_row(const Quadric1Params& p, const SampleOptions& sampling, double tau,
                                  double fd_step = 1e-4);
QuadricTableRow quadric_table_row(const Quadric2Params& p, const SampleOptions& sampling, double tau,
                                  double fd_step = 1e-4);

/// Shortest representation that round-trips; used for every number in CSV output.
std::string format_number(double value);

} // namespace beltrami
