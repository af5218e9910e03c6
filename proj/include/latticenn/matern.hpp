#pragma once

#include <stdexcept>

namespace latticenn {

struct MaternError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Stationary isotropic Matern covariance parameters: sill, range, smoothness.
struct MaternParams {
  double sigma2 = 1.0;
  double phi = 0.1;
  double nu = 0.5;

  void validate() const;
};

// True when `nu` is one of the supported smoothness orders
// {0.5, 1, 1.5, 2, 2.5}.
bool matern_order_supported(double nu);

// Modified Bessel function of the second kind for the supported orders.
// Half-integer orders use closed forms; integer orders use the convergent
// ascending series below x = 2 and a continued-fraction evaluation of the
// large-argument expansion above it.
double bessel_k(double nu, double x);

// sigma^2 * 2^{1-nu}/Gamma(nu) * (sqrt(2 nu) h/phi)^nu * K_nu(sqrt(2 nu) h/phi),
// with the h = 0 limit equal to sigma^2.
double matern_cov(double h, const MaternParams& params);

}  // namespace latticenn
