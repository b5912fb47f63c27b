#pragma once

#include <span>
#include <vector>

namespace beltrami {

/// Polynomial in the ruling parameter t with numeric coefficients, lowest
/// degree first. Trailing zeros are trimmed; degree is capped at 6.
class TPoly {
public:
    static constexpr int kMaxDegree = 6;

    TPoly() = default;
    explicit TPoly(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int k) const;

    double operator()(double t) const;

    TPoly operator+(const TPoly& other) const;
    TPoly operator*(double s) const;

    /// Least-squares fit of degree <= max_degree through (nodes, values).
    /// Throws IllConditionedVandermonde for coincident or too few nodes.
    static TPoly fit(std::span<const double> nodes, std::span<const double> values,
                     int max_degree = kMaxDegree);

    /// Coefficients whose magnitude is below tol are dropped from the top.
    TPoly trimmed(double tol) const;

private:
    void trim_exact();
    std::vector<double> coeffs_;
};

/// Chebyshev points of the first kind mapped to [a, b].
std::vector<double> chebyshev_nodes(double a, double b, int count);

} // namespace beltrami
