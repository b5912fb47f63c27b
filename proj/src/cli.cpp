#include "beltrami/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "beltrami/errors.hpp"
#include "beltrami/forms.hpp"
#include "beltrami/operators.hpp"
#include "beltrami/quadric.hpp"
#include "beltrami/report.hpp"
#include "beltrami/ruled.hpp"
#include "beltrami/verification.hpp"

namespace beltrami {

using nlohmann::json;

namespace {

constexpr double kIdentityTol = 1e-5;
constexpr double kCayleyTol = 1e-10;
constexpr double kRuledTol = 1e-4;

const std::vector<std::string> kCommands{"check", "fit-lambda", "verify-paper", "quadric-table",
                                         "ruled-coeffs"};

[[noreturn]] void config_error(const std::string& what)
{
    throw GeometryError(ErrorKind::ConfigError, what);
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

SampleOptions sampling_of(const RunConfig& c)
{
    return SampleOptions{c.n_u, c.n_v, c.eps_K, c.eps_q};
}

json envelope(const RunConfig& c)
{
    json j{{"schema", kReportSchema}, {"command", c.command}, {"seed", c.seed}};
    j["tolerances"] = {{"eps_K", c.eps_K}, {"eps_q", c.eps_q}, {"tau", c.tau}, {"fd_step", c.fd_step}};
    j["grid"] = {c.n_u, c.n_v};
    if (c.timestamp) {
        j["timestamp"] = utc_timestamp();
    }
    return j;
}

void print_lambda(std::ostream& out, const LambdaFit& fit)
{
    out << "Lambda" << (fit.translation ? " | B" : "") << ":\n";
    for (int i = 0; i < 3; ++i) {
        out << "  ";
        for (int j = 0; j < 3; ++j) {
            out << std::setw(14) << format_number(fit.lambda(i, j)) << ' ';
        }
        if (fit.translation) {
            out << "| " << format_number((*fit.translation)[i]);
        }
        out << '\n';
    }
}

void print_fit_text(std::ostream& out, const SurfacePatch& s, const Verdict& v)
{
    out << "surface: " << s.name << " (" << s.family << ")\n";
    out << "mode: " << to_string(v.fit.mode) << ", samples: " << v.fit.n_samples << '\n';
    print_lambda(out, v.fit);
    out << "residual_max: " << format_number(v.fit.residual_max)
        << "\nresidual_rms: " << format_number(v.fit.residual_rms) << "\nverdict: " << to_string(v.kind)
        << " (tau " << format_number(v.threshold) << ")\n";
}

struct PointCheck {
    ParamPoint p;
    double identity{0.0};
    double gauss{0.0};
    double cayley{0.0};
};

int cmd_check(const RunConfig& c, std::ostream& out)
{
    const SurfacePatch s = build_surface(c.surface);
    const OperatorOptions op{c.fd_step, c.eps_K};
    const SurfaceAnalysis an = analyze_surface(s, sampling_of(c), c.mode, c.tau, c.fd_step);

    std::vector<PointCheck> checks;
    double worst_identity = 0.0, worst_gauss = 0.0, worst_cayley = 0.0;
    for (const ParamPoint& p : an.points) {
        PointCheck pc{p};
        pc.identity = position_identity(s, p, op).residual;
        const FormBundle fb = form_bundle(eval_jet(s, p));
        pc.gauss = (delta3_gauss(s, p, op) - 2.0 * fb.n).norm();
        const Mat2 ch = fb.e.matrix() - 2.0 * fb.H * fb.b.matrix() + fb.K * fb.g.matrix();
        const double scale = std::max({1e-300, fb.e.matrix().cwiseAbs().maxCoeff(),
                                       std::abs(fb.K) * fb.g.matrix().cwiseAbs().maxCoeff()});
        pc.cayley = ch.cwiseAbs().maxCoeff() / scale;
        worst_identity = std::max(worst_identity, pc.identity);
        worst_gauss = std::max(worst_gauss, pc.gauss);
        worst_cayley = std::max(worst_cayley, pc.cayley);
        checks.push_back(pc);
    }
    const bool ok = worst_identity < kIdentityTol && worst_gauss < kIdentityTol && worst_cayley < kCayleyTol;

    if (c.format == OutputFormat::Json) {
        json j = envelope(c);
        j["surface_spec"] = to_json(c.surface);
        j["fit"] = fit_report_json(s, an.verdict);
        json pts = json::array();
        for (const PointCheck& pc : checks) {
            pts.push_back({{"u", pc.p.u},
                           {"v", pc.p.v},
                           {"position_identity", pc.identity},
                           {"gauss_eigenrelation", pc.gauss},
                           {"cayley_hamilton", pc.cayley}});
        }
        j["points"] = pts;
        j["identities"] = {{"position_identity_max", worst_identity},
                           {"gauss_eigenrelation_max", worst_gauss},
                           {"cayley_hamilton_max", worst_cayley},
                           {"passed", ok}};
        out << j.dump(2) << '\n';
    } else if (c.format == OutputFormat::Csv) {
        out << "u,v,position_identity,gauss_eigenrelation,cayley_hamilton\n";
        for (const PointCheck& pc : checks) {
            out << format_number(pc.p.u) << ',' << format_number(pc.p.v) << ',' << format_number(pc.identity)
                << ',' << format_number(pc.gauss) << ',' << format_number(pc.cayley) << '\n';
        }
    } else {
        print_fit_text(out, s, an.verdict);
        out << "position identity max: " << format_number(worst_identity)
            << "\nGauss map eigenrelation max: " << format_number(worst_gauss)
            << "\nCayley-Hamilton max: " << format_number(worst_cayley) << '\n'
            << (ok ? "identities: pass" : "identities: FAIL") << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_fit(const RunConfig& c, std::ostream& out)
{
    const SurfacePatch s = build_surface(c.surface);
    const SurfaceAnalysis an = analyze_surface(s, sampling_of(c), c.mode, c.tau, c.fd_step);
    const VerdictKind kind = an.verdict.kind;
    const bool ok = c.expect ? kind == *c.expect : kind != VerdictKind::NotCoordinateFiniteType;

    if (c.format == OutputFormat::Json) {
        json j = envelope(c);
        j["surface_spec"] = to_json(c.surface);
        j["fit"] = fit_report_json(s, an.verdict);
        json samples = json::array();
        for (std::size_t i = 0; i < an.points.size(); ++i) {
            const LambdaSample& ls = an.samples[i];
            samples.push_back({{"u", an.points[i].u},
                               {"v", an.points[i].v},
                               {"x", {ls.x[0], ls.x[1], ls.x[2]}},
                               {"delta", {ls.delta[0], ls.delta[1], ls.delta[2]}}});
        }
        j["samples"] = samples;
        j["expect"] = c.expect ? json(to_string(*c.expect)) : json(nullptr);
        j["passed"] = ok;
        out << j.dump(2) << '\n';
    } else if (c.format == OutputFormat::Csv) {
        out << fit_report_csv_header() << '\n' << fit_report_csv_row(s, an.verdict) << '\n';
    } else {
        print_fit_text(out, s, an.verdict);
        if (c.expect) {
            out << "expected: " << to_string(*c.expect) << (ok ? " (match)" : " (MISMATCH)") << '\n';
        }
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const RunConfig& c, std::ostream& out)
{
    AcceptanceOptions opts;
    opts.seed = c.seed;
    opts.sampling = sampling_of(c);
    opts.tau = c.tau;
    opts.fd_step = c.fd_step;

    std::vector<int> ids = c.criteria;
    if (ids.empty()) {
        for (int i = 1; i <= kCriterionCount; ++i) {
            ids.push_back(i);
        }
    }
    std::vector<CriterionResult> results;
    for (const int id : ids) {
        results.push_back(run_criterion(id, opts));
    }
    const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });

    if (c.format == OutputFormat::Json) {
        json j = envelope(c);
        json arr = json::array();
        for (const auto& r : results) {
            arr.push_back(to_json(r));
        }
        j["criteria"] = arr;
        j["passed"] = ok;
        out << j.dump(2) << '\n';
    } else if (c.format == OutputFormat::Csv) {
        out << "id,name,passed,detail\n";
        for (const auto& r : results) {
            out << r.id << ',' << csv_field(r.name) << ',' << (r.passed ? "true" : "false") << ','
                << csv_field(r.detail) << '\n';
        }
    } else {
        for (const auto& r : results) {
            out << (r.passed ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << r.name << ": "
                << r.detail << '\n';
        }
        out << std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; }) << '/'
            << results.size() << " criteria passed\n";
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_quadric_table(const RunConfig& c, std::ostream& out)
{
    std::vector<QuadricTableRow> rows;
    std::vector<bool> consistent;
    const SampleOptions sampling = sampling_of(c);
    const std::string finite = to_string(VerdictKind::NotCoordinateFiniteType);
    if (c.quadric_family != "quadric2") {
        const auto it = c.surface.params.find("c");
        const double cc = it == c.surface.params.end() ? 1.0 : it->second;
        for (const double a : {-1.0, -0.5, -2.0}) {
            for (const double b : {-1.0, -0.5, -2.0}) {
                rows.push_back(quadric_table_row(Quadric1Params{a, b, cc}, sampling, c.tau, c.fd_step));
                const bool sphere = a == -1.0 && b == -1.0 && cc > 0.0;
                consistent.push_back(sphere ? rows.back().verdict == to_string(VerdictKind::SphereType)
                                            : rows.back().verdict == finite);
            }
        }
    }
    if (c.quadric_family != "quadric1") {
        for (const double a : {0.5, 1.0, 2.0}) {
            for (const double b : {0.5, 1.0, 2.0}) {
                rows.push_back(quadric_table_row(Quadric2Params{a, b}, sampling, c.tau, c.fd_step));
                consistent.push_back(rows.back().verdict == finite);
            }
        }
    }
    const bool ok = std::all_of(consistent.begin(), consistent.end(), [](bool b) { return b; });

    if (c.format == OutputFormat::Json) {
        json j = envelope(c);
        json arr = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            json r = quadric_table_json(rows[i]);
            r["consistent"] = static_cast<bool>(consistent[i]);
            arr.push_back(r);
        }
        j["rows"] = arr;
        j["passed"] = ok;
        out << j.dump(2) << '\n';
    } else if (c.format == OutputFormat::Csv) {
        out << quadric_table_csv_header() << '\n';
        for (const auto& r : rows) {
            out << quadric_table_csv_row(r) << '\n';
        }
    } else {
        out << std::left << std::setw(10) << "family" << std::setw(7) << "a" << std::setw(7) << "b"
            << std::setw(7) << "c" << std::setw(26) << "verdict" << "residual_max\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            out << std::left << std::setw(10) << r.family << std::setw(7) << format_number(r.a) << std::setw(7)
                << format_number(r.b) << std::setw(7) << format_number(r.c) << std::setw(26) << r.verdict
                << format_number(r.residual_max) << (consistent[i] ? "" : "  (unexpected)") << '\n';
        }
        out << "x3 reading: actual_coordinate\n";
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_ruled(const RunConfig& c, std::ostream& out)
{
    SurfaceSpec spec = c.surface;
    if (spec.family != "ruled") {
        config_error("ruled-coeffs needs --surface ruled");
    }
    const CurvePair pair = build_curve_pair(spec);
    const Domain domain = spec.domain.value_or(default_ruled_domain(spec.ruling));
    if (c.ruled_s < domain.u0 || c.ruled_s > domain.u1) {
        config_error("--s lies outside the s-range of the domain");
    }
    const RuledCoefficientReport rep =
        ruled_coefficient_report(pair, domain, c.ruled_s, c.ruled_nodes, OperatorOptions{c.fd_step, c.eps_K});
    const bool ok = rep.max_deviation < kRuledTol && rep.linear_term.exactly_one();

    if (c.format == OutputFormat::Json) {
        json j = envelope(c);
        j["surface_spec"] = to_json(spec);
        j["report"] = ruled_report_json(rep);
        j["passed"] = ok;
        out << j.dump(2) << '\n';
    } else if (c.format == OutputFormat::Csv) {
        out << "q,source,t0,t1,t2,t3,t4,t5,t6\n";
        for (int k = 0; k < 5; ++k) {
            for (const auto& [label, table] : {std::pair{"closed", &rep.closed}, std::pair{"probed", &rep.probed}}) {
                out << 'Q' << k + 1 << ',' << label;
                for (int d = 0; d <= TPoly::kMaxDegree; ++d) {
                    out << ',' << format_number((*table)[k].coeff(d));
                }
                out << '\n';
            }
        }
    } else {
        out << "surface: " << rep.surface << ", s = " << format_number(rep.s) << '\n';
        for (int k = 0; k < 5; ++k) {
            out << 'Q' << k + 1 << " closed:";
            for (int d = 0; d <= TPoly::kMaxDegree; ++d) {
                out << ' ' << format_number(rep.closed[k].coeff(d));
            }
            out << "\n   probed:";
            for (int d = 0; d <= TPoly::kMaxDegree; ++d) {
                out << ' ' << format_number(rep.probed[k].coeff(d));
            }
            out << '\n';
        }
        out << "max deviation: " << format_number(rep.max_deviation) << '\n'
            << "linear term: 2kappa_nu+4lambda_rho deviation " << format_number(rep.linear_term.deviation_2_4)
            << ", 3kappa_nu+3lambda_rho deviation " << format_number(rep.linear_term.deviation_3_3) << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

double env_double(const char* name, double fallback)
{
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (used != std::string(raw).size()) {
            throw std::invalid_argument(raw);
        }
        return v;
    } catch (const std::exception&) {
        config_error(std::string(name) + " is not a number: '" + raw + "'");
    }
}

std::pair<int, int> parse_grid(const std::string& text)
{
    const auto x = text.find_first_of("xX");
    try {
        if (x == std::string::npos) {
            throw std::invalid_argument(text);
        }
        std::size_t a = 0, b = 0;
        const std::string left = text.substr(0, x), right = text.substr(x + 1);
        const int nu = std::stoi(left, &a);
        const int nv = std::stoi(right, &b);
        if (a != left.size() || b != right.size()) {
            throw std::invalid_argument(text);
        }
        return {nu, nv};
    } catch (const std::exception&) {
        config_error("--grid expects NxM, got '" + text + "'");
    }
}

} // namespace

std::optional<VerdictKind> parse_verdict(const std::string& name)
{
    for (const VerdictKind k : {VerdictKind::NullType, VerdictKind::SphereType, VerdictKind::GeneralLambda,
                                VerdictKind::NotCoordinateFiniteType}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

void validate(const RunConfig& c)
{
    if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
        config_error("unknown command '" + c.command + "'");
    }
    if (c.n_u < 3 || c.n_v < 3) {
        config_error("grid must be at least 3x3");
    }
    for (const auto& [name, value] : {std::pair{"eps-K", c.eps_K}, std::pair{"eps-q", c.eps_q},
                                      std::pair{"tau", c.tau}, std::pair{"fd-step", c.fd_step}}) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            config_error(std::string("tolerance ") + name + " must be positive");
        }
    }
    for (const int id : c.criteria) {
        if (id < 1 || id > kCriterionCount) {
            config_error("no acceptance criterion " + std::to_string(id));
        }
    }
    if (c.quadric_family != "both" && c.quadric_family != "quadric1" && c.quadric_family != "quadric2") {
        config_error("--family must be quadric1, quadric2 or both");
    }
    if (c.ruled_nodes < 7) {
        config_error("--nodes must be at least 7");
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        validate(config);
        if (config.command == "check") {
            return cmd_check(config, out);
        }
        if (config.command == "fit-lambda") {
            return cmd_fit(config, out);
        }
        if (config.command == "verify-paper") {
            return cmd_verify(config, out);
        }
        if (config.command == "quadric-table") {
            return cmd_quadric_table(config, out);
        }
        return cmd_ruled(config, out);
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::ConfigError ? kExitConfigError : kExitCheckFailed;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    try {
        c.eps_K = env_double("BELTRAMI_EPS_K", c.eps_K);
        c.eps_q = env_double("BELTRAMI_EPS_Q", c.eps_q);
        c.tau = env_double("BELTRAMI_TAU", c.tau);
        c.fd_step = env_double("BELTRAMI_FD_STEP", c.fd_step);
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    CLI::App app{"Fundamental forms, Beltrami operators and coordinate finite type checks", "beltrami"};
    app.add_option("command", c.command, "check | fit-lambda | verify-paper | quadric-table | ruled-coeffs")
        ->required()
        ->check(CLI::IsMember(kCommands));

    std::string family = "sphere", config_path, grid, format = "text", mode = "strict", expect, name, ruling;
    std::optional<double> radius, c5, lambda, cc, a, b;
    std::vector<double> center, domain;
    bool all = false;

    app.add_option("--surface", family, "surface family")->check(CLI::IsMember(known_families()));
    app.add_option("--name", name, "surface name used in reports");
    app.add_option("--radius", radius, "sphere or cylinder radius");
    app.add_option("--center", center, "sphere center x,y,z")->delimiter(',')->expected(3);
    app.add_option("--c5", c5, "helicoid pitch");
    app.add_option("--lambda", lambda, "helicoid offset");
    app.add_option("--c", cc, "catenoid waist or kind-I constant");
    app.add_option("--a", a, "quadric coefficient a");
    app.add_option("--b", b, "quadric coefficient b");
    app.add_option("--ruling", ruling, "helicoid | perturbed | small-circle");
    app.add_option("--domain", domain, "u0,u1,v0,v1")->delimiter(',')->expected(4);
    app.add_option("--config", config_path, "JSON surface config")->check(CLI::ExistingFile);
    app.add_option("--grid", grid, "sample grid NxM (default 6x6)");
    app.add_option("--eps-K", c.eps_K, "parabolic threshold");
    app.add_option("--eps-q", c.eps_q, "striction threshold for ruled charts");
    app.add_option("--tau", c.tau, "classification threshold");
    app.add_option("--fd-step", c.fd_step, "finite-difference step of the operators");
    app.add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", c.seed, "seed for randomized sweeps");
    app.add_option("--mode", mode, "strict | affine")->check(CLI::IsMember({"strict", "affine"}));
    app.add_option("--expect", expect, "expected verdict; pass iff the fit reports it");
    app.add_flag("--all", all, "verify-paper: run every criterion (default)");
    app.add_option("--criterion", c.criteria, "verify-paper: run only these criteria");
    app.add_option("--family", c.quadric_family, "quadric-table: quadric1 | quadric2 | both");
    app.add_option("--s", c.ruled_s, "ruled-coeffs: directrix parameter");
    app.add_option("--nodes", c.ruled_nodes, "ruled-coeffs: number of t nodes");
    app.add_flag("--no-timestamp", [&c](std::int64_t) { c.timestamp = false; }, "omit the report timestamp");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (!config_path.empty()) {
            c.surface = load_surface_spec(config_path);
        } else {
            c.surface = SurfaceSpec{};
            c.surface.family = family;
            c.surface.name = family;
        }
        if (!name.empty()) {
            c.surface.name = name;
        }
        auto set = [&](const char* key, const std::optional<double>& v) {
            if (v) {
                c.surface.params[key] = *v;
            }
        };
        set("r", radius);
        set("c5", c5);
        set("lambda", lambda);
        set("c", cc);
        set("a", a);
        set("b", b);
        if (!center.empty()) {
            c.surface.params["cx"] = center[0];
            c.surface.params["cy"] = center[1];
            c.surface.params["cz"] = center[2];
        }
        if (!ruling.empty()) {
            c.surface.ruling = ruling;
        }
        if (!domain.empty()) {
            c.surface.domain = Domain{domain[0], domain[1], domain[2], domain[3]};
            if (!(domain[0] < domain[1]) || !(domain[2] < domain[3])) {
                config_error("--domain must satisfy u0 < u1 and v0 < v1");
            }
        }
        if (c.command != "quadric-table") {
            parse_surface_spec(to_json(c.surface));
        }
        if (!grid.empty()) {
            std::tie(c.n_u, c.n_v) = parse_grid(grid);
        }
        if (!expect.empty()) {
            c.expect = parse_verdict(expect);
            if (!c.expect) {
                config_error("--expect must name a verdict: NullType, SphereType, GeneralLambda, "
                             "NotCoordinateFiniteType");
            }
        }
        c.format = format == "json" ? OutputFormat::Json : format == "csv" ? OutputFormat::Csv : OutputFormat::Text;
        c.mode = mode == "affine" ? FitMode::Affine : FitMode::Strict;
        if (all) {
            c.criteria.clear();
        }
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    return run(c, out, err);
}

} // namespace beltrami
