#pragma once

#include <functional>
#include <vector>

namespace shakerbeam::quadrature {

struct Rule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; nodes by Newton iteration on P_n.
Rule gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
double integrate(const std::function<double(double)>& f, double a, double b, int panels, const Rule& rule);

}  // namespace shakerbeam::quadrature
