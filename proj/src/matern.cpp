#include "latticenn/matern.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace latticenn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;

// Ascending series for I_n and K_0, K_1 (n = 0, 1), convergent for all x and
// numerically clean below the x = 2 crossover.
double bessel_i_series(int n, double x) {
  const double t = 0.25 * x * x;
  double term = std::pow(0.5 * x, n);
  for (int k = 1; k <= n; ++k) term /= static_cast<double>(k);  // 1/n!
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= t / (static_cast<double>(k) * static_cast<double>(k + n));
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

double bessel_k0_series(double x) {
  const double t = 0.25 * x * x;
  double term = 1.0;
  double harmonic = 0.0;
  double sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= t / (static_cast<double>(k) * static_cast<double>(k));
    harmonic += 1.0 / static_cast<double>(k);
    sum += term * harmonic;
    if (term * harmonic < std::abs(sum) * 1e-18 && k > 4) break;
  }
  return -(std::log(0.5 * x) + kEulerGamma) * bessel_i_series(0, x) + sum;
}

double bessel_k1_series(double x) {
  const double t = 0.25 * x * x;
  // sum_k (psi(k+1) + psi(k+2)) t^k / (k! (k+1)!), psi(1) = -gamma
  double term = 1.0;
  double psi_a = -kEulerGamma;        // psi(k+1)
  double psi_b = 1.0 - kEulerGamma;   // psi(k+2)
  double sum = psi_a + psi_b;
  for (int k = 1; k < 60; ++k) {
    term *= t / (static_cast<double>(k) * static_cast<double>(k + 1));
    psi_a += 1.0 / static_cast<double>(k);
    psi_b += 1.0 / static_cast<double>(k + 1);
    sum += term * (psi_a + psi_b);
    if (term * (psi_a + psi_b) < std::abs(sum) * 1e-18 && k > 4) break;
  }
  return 1.0 / x + std::log(0.5 * x) * bessel_i_series(1, x) - 0.25 * x * sum;
}

// Steed continued fraction for K_0 and K_1 at x >= 2 (the standard way to sum
// the divergent large-argument expansion); relative accuracy ~1e-15.
void bessel_k01_cf(double x, double& k0, double& k1) {
  const double eps = std::numeric_limits<double>::epsilon();
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;  // 1/4 - mu^2 at mu = 0
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2.0 * static_cast<double>(i - 1);
    c = -a * c / static_cast<double>(i);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) <= eps) break;
  }
  h = a1 * h;
  k0 = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
  k1 = k0 * (x + 0.5 - h) / x;
}

double bessel_k_integer(int n, double x) {
  double k0, k1;
  if (x < 2.0) {
    k0 = bessel_k0_series(x);
    k1 = bessel_k1_series(x);
  } else {
    bessel_k01_cf(x, k0, k1);
  }
  if (n == 0) return k0;
  if (n == 1) return k1;
  // upward recurrence K_{m+1} = K_{m-1} + (2m/x) K_m, stable for K
  double km = k0, kc = k1;
  for (int m = 1; m < n; ++m) {
    const double kn = km + (2.0 * static_cast<double>(m) / x) * kc;
    km = kc;
    kc = kn;
  }
  return kc;
}

double bessel_k_half(double nu, double x) {
  const double base = std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
  if (nu == 0.5) return base;
  if (nu == 1.5) return base * (1.0 + 1.0 / x);
  return base * (1.0 + 3.0 / x + 3.0 / (x * x));  // nu = 2.5
}

bool close_to(double a, double b) { return std::abs(a - b) < 1e-12; }

}  // namespace

void MaternParams::validate() const {
  if (!(sigma2 > 0.0)) throw MaternError("sigma2 must be positive");
  if (!(phi > 0.0)) throw MaternError("phi must be positive");
  if (!(nu > 0.0)) throw MaternError("nu must be positive");
}

bool matern_order_supported(double nu) {
  for (double v : {0.5, 1.0, 1.5, 2.0, 2.5})
    if (close_to(nu, v)) return true;
  return false;
}

double bessel_k(double nu, double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw MaternError("bessel_k requires x > 0");
  if (close_to(nu, 0.5) || close_to(nu, 1.5) || close_to(nu, 2.5))
    return bessel_k_half(std::round(nu * 2.0) / 2.0, x);
  if (close_to(nu, 1.0)) return bessel_k_integer(1, x);
  if (close_to(nu, 2.0)) return bessel_k_integer(2, x);
  throw MaternError("unsupported Bessel order " + std::to_string(nu) +
                    "; supported orders are {0.5, 1, 1.5, 2, 2.5}");
}

double matern_cov(double h, const MaternParams& params) {
  params.validate();
  if (!std::isfinite(h) || h < 0.0)
    throw MaternError("matern_cov requires finite h >= 0");
  if (h == 0.0) return params.sigma2;
  const double z = std::sqrt(2.0 * params.nu) * h / params.phi;
  const double k = bessel_k(params.nu, z);
  if (k == 0.0) return 0.0;  // covariance underflows far beyond the range
  const double value = params.sigma2 * std::pow(2.0, 1.0 - params.nu) /
                       std::tgamma(params.nu) * std::pow(z, params.nu) * k;
  return std::min(value, params.sigma2);
}

}  // namespace latticenn
