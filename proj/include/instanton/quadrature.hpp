#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace instanton {

// Adaptive Gauss-Kronrod (7,15).  b may be +infinity; then [a+1, inf) is
// mapped by r = a + e^u and truncated once the tail drops below tol.
double quad(const std::function<double(double)>& f, double a, double b, double tol = 1e-10,
            std::size_t max_intervals = 20000);

struct QuadratureRule {
  std::vector<double> nodes, weights;
};

// n-point Gauss-Legendre on [-1, 1]
QuadratureRule gauss_legendre(int n);

// n+1 Clenshaw-Curtis nodes cos(j pi / n) on [-1, 1]
QuadratureRule clenshaw_curtis(int n);

}  // namespace instanton
