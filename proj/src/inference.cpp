#include "latticenn/inference.hpp"

#include <algorithm>
#include <cmath>

namespace latticenn {

void SubsampleLadder::validate(double eta) const {
  if (deltas.size() < 2)
    throw InferenceError("subsample ladder needs at least two rungs");
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    if (!(deltas[j] > eta))
      throw InferenceError("every ladder radius must exceed the grid spacing");
    if (j > 0 && !(deltas[j] > deltas[j - 1]))
      throw InferenceError("ladder radii must be strictly increasing");
  }
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw InferenceError("normal quantile requires p in (0, 1)");

  // Acklam's rational approximation with tail/central split.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double u = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (p <= 1.0 - plow) {
    const double u = p - 0.5;
    const double t = u * u;
    x = (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * u /
        (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  // one Halley refinement against the complementary error function
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

CIResult subsample_ci(std::int64_t site, const SubsampleLadder& ladder,
                      const std::function<double(double, std::size_t)>& estimate_at,
                      double y_reference, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InferenceError("alpha must lie in (0, 1]");

  CIResult result;
  result.site = site;
  result.alpha = alpha;
  result.estimates.reserve(ladder.rungs());
  double sum = 0.0, spread = 0.0;
  for (std::size_t j = 0; j < ladder.rungs(); ++j) {
    const double est = estimate_at(ladder.deltas[j], j);
    result.estimates.push_back(est);
    sum += est;
    spread += (y_reference - est) * (y_reference - est);
  }
  const auto b = static_cast<double>(ladder.rungs());
  result.mean = sum / b;
  result.lambda_spread = std::sqrt(spread / b);
  const double z = alpha >= 1.0 ? 0.0 : normal_quantile(1.0 - alpha / 2.0);
  result.lower = result.mean - z * result.lambda_spread;
  result.upper = result.mean + z * result.lambda_spread;
  return result;
}

ECDF ECDF::from(std::vector<double> values) {
  if (values.empty()) throw InferenceError("empty sample for ECDF");
  std::sort(values.begin(), values.end());
  return ECDF{std::move(values)};
}

double ECDF::operator()(double y) const {
  const auto it = std::upper_bound(samples.begin(), samples.end(), y);
  return static_cast<double>(it - samples.begin()) /
         static_cast<double>(samples.size());
}

ECDF make_ecdf(const std::vector<double>& values) { return ECDF::from(values); }

double kl_categorical(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size())
    throw InferenceError("probability vectors of unequal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) throw InferenceError("KL undefined: q has a zero where p > 0");
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(sum, 0.0);
}

KLResult kl_divergence(const ECDF& observed, const ECDF& predicted, int bins,
                       double epsilon) {
  if (observed.size() == 0 || predicted.size() == 0)
    throw InferenceError("KL needs nonempty samples on both sides");

  KLResult result;
  result.epsilon = epsilon;
  if (bins <= 0)
    bins = static_cast<int>(std::ceil(
        std::sqrt(static_cast<double>(std::max(observed.size(), predicted.size())))));
  result.bin_count = bins;

  const double lo = std::min(observed.samples.front(), predicted.samples.front());
  const double hi = std::max(observed.samples.back(), predicted.samples.back());
  if (!(hi - lo > 0.0)) {
    result.degenerate = true;
    result.value = 0.0;
    return result;
  }

  const auto histogram = [&](const ECDF& e) {
    std::vector<double> probs(static_cast<std::size_t>(bins), 0.0);
    for (double v : e.samples) {
      auto k = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
      if (k >= probs.size()) k = probs.size() - 1;
      probs[k] += 1.0;
    }
    const double denom = static_cast<double>(e.size()) + bins * epsilon;
    for (double& c : probs) c = (c + epsilon) / denom;
    return probs;
  };

  result.value = kl_categorical(histogram(observed), histogram(predicted));
  return result;
}

std::vector<std::pair<double, double>> kl_ladder(
    const std::vector<double>& deltas,
    const std::function<std::pair<std::vector<double>, std::vector<double>>(double)>&
        observe_and_predict,
    int bins, double epsilon) {
  for (std::size_t j = 1; j < deltas.size(); ++j)
    if (!(deltas[j] > deltas[j - 1]))
      throw InferenceError("KL ladder radii must be strictly increasing");
  std::vector<std::pair<double, double>> series;
  series.reserve(deltas.size());
  for (double delta : deltas) {
    auto [observed, predicted] = observe_and_predict(delta);
    const KLResult kl =
        kl_divergence(ECDF::from(observed), ECDF::from(predicted), bins, epsilon);
    series.emplace_back(delta, kl.value);
  }
  return series;
}

}  // namespace latticenn
