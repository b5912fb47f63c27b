#include "beltrami/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "beltrami/catalog.hpp"
#include "beltrami/errors.hpp"
#include "beltrami/quadric.hpp"

namespace beltrami {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what)
{
    throw GeometryError(ErrorKind::ConfigError, what);
}

const std::map<std::string, std::set<std::string>>& allowed_params()
{
    static const std::map<std::string, std::set<std::string>> table{
        {"sphere", {"r", "cx", "cy", "cz"}},
        {"helicoid", {"c5", "lambda", "c2", "c4", "c6"}},
        {"catenoid", {"c"}},
        {"plane", {}},
        {"cylinder", {"r"}},
        {"ruled", {"c5", "lambda", "c2", "c4", "c6", "phi", "p0", "p1", "k1", "q0", "q1", "k2"}},
        {"quadric1", {"a", "b", "c"}},
        {"quadric2", {"a", "b"}},
        {"custom-grid", {}},
    };
    return table;
}

const std::map<std::string, std::set<std::string>>& ruling_params()
{
    static const std::map<std::string, std::set<std::string>> table{
        {"helicoid", {"c5", "lambda", "c2", "c4", "c6"}},
        {"perturbed", {}},
        {"small-circle", {"phi", "p0", "p1", "k1", "q0", "q1", "k2"}},
    };
    return table;
}

double param(const SurfaceSpec& spec, const std::string& key, double fallback)
{
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

Domain parse_domain(const json& j)
{
    if (!j.is_array() || j.size() != 4) {
        config_error("domain must be [u0, u1, v0, v1]");
    }
    Domain d;
    try {
        d = Domain{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
    } catch (const json::exception&) {
        config_error("domain entries must be numbers");
    }
    if (!(d.u0 < d.u1) || !(d.v0 < d.v1) || !std::isfinite(d.width()) || !std::isfinite(d.height())) {
        config_error("domain must satisfy u0 < u1 and v0 < v1");
    }
    return d;
}

void validate(const SurfaceSpec& spec)
{
    const auto fam = allowed_params().find(spec.family);
    if (fam == allowed_params().end()) {
        config_error("unknown family '" + spec.family + "'");
    }
    std::set<std::string> allowed = fam->second;
    if (spec.family == "ruled") {
        const auto r = ruling_params().find(spec.ruling);
        if (r == ruling_params().end()) {
            config_error("unknown ruling '" + spec.ruling + "'");
        }
        allowed = r->second;
    }
    for (const auto& [key, value] : spec.params) {
        if (!allowed.count(key)) {
            config_error("parameter '" + key + "' does not apply to family '" + spec.family + "'");
        }
        if (!std::isfinite(value)) {
            config_error("parameter '" + key + "' is not finite");
        }
    }
    if (spec.family == "custom-grid") {
        if (!spec.domain) {
            config_error("custom-grid needs a domain");
        }
        if (spec.z.size() < 3) {
            config_error("custom-grid needs at least 3 rows of heights");
        }
        for (const auto& row : spec.z) {
            if (row.size() != spec.z.front().size()) {
                config_error("custom-grid rows must have equal length");
            }
        }
        if (spec.z.front().size() < 3) {
            config_error("custom-grid needs at least 3 columns of heights");
        }
        if (spec.degree < 2 || static_cast<std::size_t>(spec.degree) >= spec.z.size() ||
            static_cast<std::size_t>(spec.degree) >= spec.z.front().size()) {
            config_error("custom-grid degree must be at least 2 and below the grid size");
        }
        if (!(spec.jet_step > 0.0)) {
            config_error("jet_step must be positive");
        }
    }
}

} // namespace

const std::vector<std::string>& known_families()
{
    static const std::vector<std::string> names{"sphere",   "helicoid", "catenoid",
                                                "plane",    "cylinder", "ruled",
                                                "quadric1", "quadric2", "custom-grid"};
    return names;
}

SurfaceSpec parse_surface_spec(const json& j)
{
    if (!j.is_object()) {
        config_error("surface config must be a JSON object");
    }
    static const std::set<std::string> keys{"name", "family", "params", "domain",
                                            "ruling", "z", "degree", "jet_step"};
    for (const auto& item : j.items()) {
        if (!keys.count(item.key())) {
            config_error("unknown config field '" + item.key() + "'");
        }
    }
    SurfaceSpec spec;
    try {
        if (!j.contains("family")) {
            config_error("config is missing 'family'");
        }
        spec.family = j.at("family").get<std::string>();
        spec.name = j.value("name", spec.family);
        if (j.contains("params")) {
            for (const auto& item : j.at("params").items()) {
                spec.params[item.key()] = item.value().get<double>();
            }
        }
        if (j.contains("domain")) {
            spec.domain = parse_domain(j.at("domain"));
        }
        spec.ruling = j.value("ruling", spec.ruling);
        if (j.contains("z")) {
            spec.z = j.at("z").get<std::vector<std::vector<double>>>();
        }
        spec.degree = j.value("degree", spec.degree);
        spec.jet_step = j.value("jet_step", spec.jet_step);
    } catch (const json::exception& e) {
        config_error(std::string("malformed config: ") + e.what());
    }
    validate(spec);
    return spec;
}

SurfaceSpec load_surface_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        config_error("cannot open config file '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        config_error("cannot parse '" + path + "': " + e.what());
    }
    return parse_surface_spec(j);
}

json to_json(const SurfaceSpec& spec)
{
    json j{{"name", spec.name}, {"family", spec.family}, {"params", spec.params}};
    if (spec.domain) {
        j["domain"] = {spec.domain->u0, spec.domain->u1, spec.domain->v0, spec.domain->v1};
    }
    if (spec.family == "ruled") {
        j["ruling"] = spec.ruling;
    }
    if (spec.family == "custom-grid") {
        j["z"] = spec.z;
        j["degree"] = spec.degree;
        j["jet_step"] = spec.jet_step;
    }
    return j;
}

Domain default_ruled_domain(const std::string& ruling)
{
    if (ruling == "helicoid") {
        return Domain{0.0, 3.14159265358979323846, 0.5, 2.0};
    }
    if (ruling == "perturbed") {
        return Domain{0.0, 3.0, -1.0, 1.0};
    }
    return Domain{0.0, 2.0, -1.0, 1.0};
}

CurvePair build_curve_pair(const SurfaceSpec& spec)
{
    if (spec.ruling == "helicoid") {
        return helicoid_pair(param(spec, "c5", 1.0), param(spec, "lambda", 0.0), param(spec, "c2", 0.0),
                             param(spec, "c4", 0.0), param(spec, "c6", 0.0));
    }
    if (spec.ruling == "perturbed") {
        return perturbed_pair();
    }
    if (spec.ruling == "small-circle") {
        SmallCirclePairParams sp;
        sp.phi = param(spec, "phi", sp.phi);
        sp.p0 = param(spec, "p0", sp.p0);
        sp.p1 = param(spec, "p1", sp.p1);
        sp.k1 = param(spec, "k1", sp.k1);
        sp.q0 = param(spec, "q0", sp.q0);
        sp.q1 = param(spec, "q1", sp.q1);
        sp.k2 = param(spec, "k2", sp.k2);
        return small_circle_pair(sp);
    }
    config_error("unknown ruling '" + spec.ruling + "'");
}

SurfacePatch build_surface(const SurfaceSpec& spec)
{
    validate(spec);
    SurfacePatch s;
    const std::string& f = spec.family;
    if (f == "sphere") {
        const double r = param(spec, "r", 1.0);
        if (!(r > 0.0)) {
            config_error("sphere radius must be positive");
        }
        s = sphere(r, Vec3(param(spec, "cx", 0.0), param(spec, "cy", 0.0), param(spec, "cz", 0.0)),
                   spec.domain);
    } else if (f == "helicoid") {
        HelicoidParams hp{param(spec, "c5", 1.0), param(spec, "lambda", 0.0), param(spec, "c2", 0.0),
                          param(spec, "c4", 0.0), param(spec, "c6", 0.0)};
        if (hp.c5 == 0.0) {
            config_error("helicoid pitch c5 must be nonzero");
        }
        s = helicoid(hp, spec.domain);
    } else if (f == "catenoid") {
        const double c = param(spec, "c", 1.0);
        if (!(c > 0.0)) {
            config_error("catenoid waist c must be positive");
        }
        s = catenoid(c, spec.domain);
    } else if (f == "plane") {
        s = plane(spec.domain);
    } else if (f == "cylinder") {
        const double r = param(spec, "r", 1.0);
        if (!(r > 0.0)) {
            config_error("cylinder radius must be positive");
        }
        s = cylinder(r, spec.domain);
    } else if (f == "ruled") {
        s = ruled_surface(build_curve_pair(spec), spec.domain.value_or(default_ruled_domain(spec.ruling)));
    } else if (f == "quadric1") {
        const Quadric1Params p{param(spec, "a", -1.0), param(spec, "b", -1.0), param(spec, "c", 1.0)};
        if (p.a * p.b * p.c == 0.0) {
            config_error("quadric1 needs abc != 0");
        }
        s = quadric1_surface(p, spec.domain);
    } else if (f == "quadric2") {
        const Quadric2Params p{param(spec, "a", 1.0), param(spec, "b", 1.0)};
        if (!(p.a > 0.0) || !(p.b > 0.0)) {
            config_error("quadric2 needs a, b > 0");
        }
        s = quadric2_surface(p, spec.domain);
    } else {
        const LegendreHeightField field(*spec.domain, spec.z, spec.degree);
        s = surface_from_position(
            spec.name, [field](ParamPoint p) { return Vec3(p.u, p.v, field(p.u, p.v)); }, *spec.domain,
            spec.jet_step);
        s.family = "custom-grid";
        s.params = {{"degree", static_cast<double>(spec.degree)},
                    {"fit_residual", field.fit_residual()}};
    }
    if (!spec.name.empty()) {
        s.name = spec.name;
    }
    return s;
}

namespace {

double rescale(double x, double lo, double hi)
{
    return (2.0 * x - lo - hi) / (hi - lo);
}

// Bonnet recurrence; unlike std::legendre it accepts |y| > 1, which the jet
// stencils reach at the rim of the domain.
double legendre(int n, double y)
{
    double p0 = 1.0, p1 = y;
    if (n == 0) {
        return p0;
    }
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2 * k + 1) * y * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

} // namespace

LegendreHeightField::LegendreHeightField(const Domain& domain, const std::vector<std::vector<double>>& z,
                                         int degree)
    : domain_(domain), degree_(degree)
{
    const int rows = static_cast<int>(z.size());
    const int cols = static_cast<int>(z.front().size());
    const int nb = degree + 1;
    Eigen::MatrixXd V(rows * cols, nb * nb);
    Eigen::VectorXd rhs(rows * cols);
    for (int r = 0; r < rows; ++r) {
        const double v = domain.v0 + domain.height() * r / (rows - 1);
        const double yv = rescale(v, domain.v0, domain.v1);
        for (int c = 0; c < cols; ++c) {
            const double u = domain.u0 + domain.width() * c / (cols - 1);
            const double yu = rescale(u, domain.u0, domain.u1);
            const int row = r * cols + c;
            for (int i = 0; i < nb; ++i) {
                for (int j = 0; j < nb; ++j) {
                    V(row, i * nb + j) = legendre(i, yu) * legendre(j, yv);
                }
            }
            rhs[row] = z[r][c];
        }
    }
    const Eigen::VectorXd x = V.colPivHouseholderQr().solve(rhs);
    coeffs_.assign(x.data(), x.data() + x.size());
    fit_residual_ = (V * x - rhs).cwiseAbs().maxCoeff();
}

double LegendreHeightField::operator()(double u, double v) const
{
    const double yu = rescale(u, domain_.u0, domain_.u1);
    const double yv = rescale(v, domain_.v0, domain_.v1);
    const int nb = degree_ + 1;
    double sum = 0.0;
    for (int i = 0; i < nb; ++i) {
        const double pu = legendre(i, yu);
        for (int j = 0; j < nb; ++j) {
            sum += coeffs_[i * nb + j] * pu * legendre(j, yv);
        }
    }
    return sum;
}

} // namespace beltrami
