#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>

namespace latticenn {

struct NetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NetworkShape {
  Eigen::Index input_dim = 1;    // q
  Eigen::Index hidden_width = 1; // r, shared by both hidden layers
};

// Two-hidden-layer tanh network with a linear output unit and L1 weight
// budgets: sum_i |theta_i| <= v2, each row sum_j |nu_ij| <= v2, each row
// sum_k |upsilon_jk| <= v1 (bias included in every row sum).
struct NetworkParams {
  Eigen::VectorXd theta;    // r+1: output bias + output weights
  Eigen::MatrixXd nu;       // r x (r+1): col 0 bias, cols 1..r weights
  Eigen::MatrixXd upsilon;  // r x (q+1): col 0 bias, cols 1..q weights
  double v1 = 2.0;
  double v2 = 2.0;

  Eigen::Index input_dim() const { return upsilon.cols() - 1; }
  Eigen::Index hidden_width() const { return nu.rows(); }
  Eigen::Index parameter_count() const {
    return theta.size() + nu.size() + upsilon.size();
  }
};

// Gradient in the same layout as the parameters.
struct NetworkGradient {
  Eigen::VectorXd theta;
  Eigen::MatrixXd nu;
  Eigen::MatrixXd upsilon;
};

struct AdamConfig {
  double alpha = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  Eigen::VectorXd m;  // first-moment accumulator over the flat layout
  Eigen::VectorXd v;  // second-moment accumulator
  std::int64_t step = 0;
  AdamConfig config;

  static AdamState init(const NetworkParams& params, const AdamConfig& config);
};

struct Batch {
  Eigen::MatrixXd inputs;   // b x q
  Eigen::VectorXd targets;  // b
};

NetworkParams init_params(const NetworkShape& shape, double v1, double v2,
                          std::uint64_t seed);

double forward(const NetworkParams& params, const Eigen::Ref<const Eigen::VectorXd>& x);

// Batched evaluation, one prediction per input row.
Eigen::VectorXd forward_batch(const NetworkParams& params,
                              const Eigen::Ref<const Eigen::MatrixXd>& inputs);

double loss(const NetworkParams& params, const Batch& batch);

NetworkGradient backward(const NetworkParams& params, const Batch& batch);

// One Adam update; mutates state and params in place.
void adam_step(AdamState& state, NetworkParams& params, const NetworkGradient& grad);

// Rescales any row whose L1 norm exceeds its budget back onto the budget.
void project_constraints(NetworkParams& params);

// Parameter-space Lipschitz constant of the network output over the budget
// box: (v1 v2 ((r+1)(p+1)gamma + (p+1)gamma))^2.
double lipschitz_bound(double r, double p, double gamma, double v1, double v2);

// Flat CSV snapshot (layer,row,col,value); load round-trips bit-exactly.
void save_params(const NetworkParams& params, std::ostream& out);
NetworkParams load_params(std::istream& in);

}  // namespace latticenn
