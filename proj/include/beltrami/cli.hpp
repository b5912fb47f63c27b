#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beltrami/config.hpp"
#include "beltrami/finite_type.hpp"

namespace beltrami {

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
    std::string command;  // check | fit-lambda | verify-paper | quadric-table | ruled-coeffs
    SurfaceSpec surface;
    int n_u{6};
    int n_v{6};
    double eps_K{1e-6};
    double eps_q{1e-6};
    double tau{1e-4};
    double fd_step{1e-4};
    OutputFormat format{OutputFormat::Text};
    std::uint64_t seed{7};
    FitMode mode{FitMode::Strict};
    std::optional<VerdictKind> expect;
    std::vector<int> criteria;  // verify-paper; empty means all
    std::string quadric_family{"both"};
    double ruled_s{1.0};
    int ruled_nodes{8};
    bool timestamp{true};
};

/// Exit codes of run().
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

/// Throws GeometryError(ConfigError) when the config breaks an invariant.
void validate(const RunConfig& config);

/// Executes one command. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (tolerance defaults may come from BELTRAMI_EPS_K, BELTRAMI_EPS_Q,
/// BELTRAMI_TAU and BELTRAMI_FD_STEP) and calls run().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::optional<VerdictKind> parse_verdict(const std::string& name);

} // namespace beltrami
