#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace latticenn {

struct InferenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Strictly increasing neighborhood radii for the subsampling ladder.
struct SubsampleLadder {
  std::vector<double> deltas;

  std::size_t rungs() const { return deltas.size(); }
  void validate(double eta) const;
};

struct CIResult {
  std::int64_t site = 0;
  double alpha = 0.05;
  std::vector<double> estimates;  // one localized estimate per rung
  double mean = 0.0;
  double lambda_spread = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
};

// Right-continuous empirical CDF over a sorted sample copy.
struct ECDF {
  std::vector<double> samples;  // sorted ascending

  static ECDF from(std::vector<double> values);
  double operator()(double y) const;
  std::size_t size() const { return samples.size(); }
};

struct KLResult {
  double value = 0.0;   // nats
  int bin_count = 0;
  double epsilon = 0.0;
  bool degenerate = false;  // both samples constant and equal: defined as 0
};

// Standard-normal quantile (rational approximation, |error| < 1e-8).
double normal_quantile(double p);

// Rung estimates come from the caller: given (delta, rung index) produce the
// localized estimate at the site. y_reference is the observed response the
// spread is measured against.
CIResult subsample_ci(std::int64_t site, const SubsampleLadder& ladder,
                      const std::function<double(double, std::size_t)>& estimate_at,
                      double y_reference, double alpha);

ECDF make_ecdf(const std::vector<double>& values);

// Histogram KL with shared equal-width bins over the union range and
// additive smoothing p_i = (c_i + eps) / (n + B eps). bins = 0 picks
// ceil(sqrt(max sample count)).
KLResult kl_divergence(const ECDF& observed, const ECDF& predicted,
                       int bins = 0, double epsilon = 1e-6);

// KL of explicit probability vectors (unsmoothed); shared by tests and the
// histogram path.
double kl_categorical(const std::vector<double>& p, const std::vector<double>& q);

// One (delta, KL) pair per radius; predictions come from the caller.
std::vector<std::pair<double, double>> kl_ladder(
    const std::vector<double>& deltas,
    const std::function<std::pair<std::vector<double>, std::vector<double>>(double)>&
        observe_and_predict,
    int bins = 0, double epsilon = 1e-6);

}  // namespace latticenn
