#include "beltrami/tpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "beltrami/errors.hpp"

namespace beltrami {

TPoly::TPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs))
{
    trim_exact();
    if (degree() > kMaxDegree) {
        throw GeometryError(ErrorKind::ConfigError, "TPoly degree exceeds 6");
    }
}

void TPoly::trim_exact()
{
    while (!coeffs_.empty() && coeffs_.back() == 0.0) {
        coeffs_.pop_back();
    }
}

double TPoly::coeff(int k) const
{
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : 0.0;
}

double TPoly::operator()(double t) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

TPoly TPoly::operator+(const TPoly& other) const
{
    std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (size_t k = 0; k < c.size(); ++k) {
        c[k] = coeff(static_cast<int>(k)) + other.coeff(static_cast<int>(k));
    }
    return TPoly(std::move(c));
}

TPoly TPoly::operator*(double s) const
{
    std::vector<double> c = coeffs_;
    for (double& x : c) {
        x *= s;
    }
    return TPoly(std::move(c));
}

TPoly TPoly::trimmed(double tol) const
{
    std::vector<double> c = coeffs_;
    while (!c.empty() && std::abs(c.back()) < tol) {
        c.pop_back();
    }
    return TPoly(std::move(c));
}

TPoly TPoly::fit(std::span<const double> nodes, std::span<const double> values, int max_degree)
{
    const int n = static_cast<int>(nodes.size());
    const int cols = max_degree + 1;
    if (n != static_cast<int>(values.size()) || n < cols) {
        throw GeometryError(ErrorKind::IllConditionedVandermonde,
                            "need at least degree+1 nodes with matching values");
    }
    std::vector<double> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    const double span = sorted.back() - sorted.front();
    for (int k = 1; k < n; ++k) {
        if (!(sorted[k] - sorted[k - 1] > 1e-8 * std::max(1.0, span))) {
            throw GeometryError(ErrorKind::IllConditionedVandermonde, "nodes nearly coincide");
        }
    }

    // Solve in the scaled variable y = (t - c)/r, then expand back to powers of t.
    const double c = 0.5 * (sorted.front() + sorted.back());
    const double r = std::max(0.5 * span, 1e-300);
    Eigen::MatrixXd vm(n, cols);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        const double y = (nodes[i] - c) / r;
        double pw = 1.0;
        for (int k = 0; k < cols; ++k) {
            vm(i, k) = pw;
            pw *= y;
        }
        rhs(i) = values[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vm, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-12 * sv(0)) {
        throw GeometryError(ErrorKind::IllConditionedVandermonde, "Vandermonde matrix is singular");
    }
    const Eigen::VectorXd ycoef = svd.solve(rhs);

    // sum_k a_k ((t - c)/r)^k expanded by the binomial theorem.
    std::vector<double> tcoef(cols, 0.0);
    for (int k = 0; k < cols; ++k) {
        const double scale = ycoef(k) / std::pow(r, k);
        double binom = 1.0;
        for (int m = 0; m <= k; ++m) {
            // coefficient of t^m in (t - c)^k
            tcoef[m] += scale * binom * std::pow(-c, k - m);
            binom = binom * (k - m) / (m + 1);
        }
    }
    return TPoly(std::move(tcoef));
}

std::vector<double> chebyshev_nodes(double a, double b, int count)
{
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) {
        const double x = std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * count));
        out[k] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    }
    return out;
}

} // namespace beltrami
