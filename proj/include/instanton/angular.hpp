#pragma once

#include <vector>

#include <Eigen/Dense>

#include "instanton/geometry.hpp"

namespace instanton {

// V(x) - Lambda for the given background and (m, omega)
struct AngularProblem {
  Background bg;
  double m = 0, omega = 0;
};

struct AngularSolverConfig {
  int grid_size = 64;        // uniform theta samples stored with each eigenpair
  int spectral_order = 48;   // Chebyshev degree of the reduced eigenfunction
  int max_order = 192;       // the order is doubled up to this bound until the residual is met
  double tolerance = 1e-8;   // operator residual, relative to (1 + |Lambda|) max|S|
};

struct AngularEigenpair {
  double Lambda = 0;
  AngularProblem problem;
  // S(x) = (1-x)^alpha (1+x)^beta u(x), u a polynomial given at Chebyshev-Lobatto nodes
  double alpha = 0, beta = 0;
  Eigen::VectorXd nodes, u, du;
  std::vector<double> theta, S;
  double residual = 0;
};

// exponents of the regular singular endpoints x = 1 and x = -1
std::pair<double, double> angular_endpoint_exponents(const AngularProblem& p);

// lowest k eigenpairs, ascending; throws ConvergenceError if the residual is not met
std::vector<AngularEigenpair> angular_spectrum(const AngularProblem& p, int k, const AngularSolverConfig& cfg = {});

// S(theta) for theta in [0, pi]
double angular_eigenfunction(const AngularEigenpair& e, double theta);
// dS/dtheta
double angular_eigenfunction_derivative(const AngularEigenpair& e, double theta);
// integral over [0, pi] of S_i S_j sin(theta)
double angular_inner_product(const AngularEigenpair& a, const AngularEigenpair& b);

// second-order cell-centred finite differences in x = cos(theta); N cells
std::vector<double> fd_oracle_spectrum(const AngularProblem& p, int k, int N);

struct RichardsonResult {
  std::vector<double> coarse, fine, extrapolated;
  std::vector<double> observed_order;  // log2 of the error ratio against a reference, if given
};

// Richardson extrapolation over (N, 2N) assuming order 2; the observed order uses 'reference'
// when it is nonempty, otherwise the 4N solve
RichardsonResult fd_richardson(const AngularProblem& p, int k, int N, const std::vector<double>& reference = {});

}  // namespace instanton
