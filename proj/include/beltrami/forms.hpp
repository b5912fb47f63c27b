#pragma once

#include <utility>

#include "beltrami/surface.hpp"

namespace beltrami {

/// Symmetric 2x2 tensor stored by its three independent components.
struct SymTensor2 {
    double f11{0.0};
    double f12{0.0};
    double f22{0.0};

    double det() const { return f11 * f22 - f12 * f12; }
    double trace() const { return f11 + f22; }
    Mat2 matrix() const { return (Mat2() << f11, f12, f12, f22).finished(); }

    static SymTensor2 from_matrix(const Mat2& m);
};

/// The three fundamental forms together with the Gauss map and curvatures.
struct FormBundle {
    SymTensor2 g;  // first fundamental form
    SymTensor2 b;  // second fundamental form
    SymTensor2 e;  // third fundamental form
    Vec3 n{Vec3::UnitZ()};
    double K{0.0};
    double H{0.0};
};

/// n = (x_u x x_v)/|x_u x x_v|; H follows that orientation.
FormBundle form_bundle(const Jet2& jet);

/// b g^-1 b. Throws SingularMetric when det g <= 1e-14.
SymTensor2 third_form(const SymTensor2& g, const SymTensor2& b);

/// true iff |K| > eps_K.
bool parabolic_guard(const FormBundle& bundle, double eps_K = 1e-6);

/// Derivatives (n_u, n_v) of the Gauss map from the Weingarten equations.
std::pair<Vec3, Vec3> gauss_map_derivatives(const Jet2& jet, const FormBundle& bundle);

} // namespace beltrami
