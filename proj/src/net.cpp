#include "latticenn/net.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "latticenn/rng.hpp"

namespace latticenn {

namespace {

struct ForwardPass {
  Eigen::MatrixXd first;   // b x r, tanh of first-layer affine maps
  Eigen::MatrixXd second;  // b x r, tanh of second-layer affine maps
  Eigen::VectorXd output;  // b
};

ForwardPass run_forward(const NetworkParams& p,
                        const Eigen::Ref<const Eigen::MatrixXd>& inputs) {
  if (inputs.cols() != p.input_dim())
    throw NetError("input dimension mismatch: got " + std::to_string(inputs.cols()) +
                   ", network expects " + std::to_string(p.input_dim()));
  ForwardPass f;
  const Eigen::Index r = p.hidden_width();
  f.first = ((inputs * p.upsilon.rightCols(p.input_dim()).transpose()).rowwise() +
             p.upsilon.col(0).transpose())
                .array()
                .tanh();
  f.second = ((f.first * p.nu.rightCols(r).transpose()).rowwise() +
              p.nu.col(0).transpose())
                 .array()
                 .tanh();
  f.output = (f.second * p.theta.tail(r)).array() + p.theta(0);
  return f;
}

}  // namespace

AdamState AdamState::init(const NetworkParams& params, const AdamConfig& config) {
  AdamState s;
  s.m = Eigen::VectorXd::Zero(params.parameter_count());
  s.v = Eigen::VectorXd::Zero(params.parameter_count());
  s.step = 0;
  s.config = config;
  return s;
}

NetworkParams init_params(const NetworkShape& shape, double v1, double v2,
                          std::uint64_t seed) {
  if (shape.input_dim < 1 || shape.hidden_width < 1)
    throw NetError("network shape must have q >= 1 and r >= 1");
  if (!(v1 > 1.0) || !(v2 > 1.0))
    throw NetError("L1 budgets must exceed 1");

  const Eigen::Index q = shape.input_dim;
  const Eigen::Index r = shape.hidden_width;
  // amplitude keeping every row inside its budget at initialization
  const double a = std::min({0.5, v1 / static_cast<double>(q + 1),
                             v2 / static_cast<double>(r + 1)});

  RandomStream stream(derive_seed(seed, "net-init", 0));
  NetworkParams p;
  p.v1 = v1;
  p.v2 = v2;
  p.theta.resize(r + 1);
  p.nu.resize(r, r + 1);
  p.upsilon.resize(r, q + 1);
  for (Eigen::Index i = 0; i < p.theta.size(); ++i) p.theta(i) = stream.uniform(-a, a);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j <= r; ++j) p.nu(i, j) = stream.uniform(-a, a);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index k = 0; k <= q; ++k) p.upsilon(j, k) = stream.uniform(-a, a);
  return p;
}

double forward(const NetworkParams& params, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return run_forward(params, x.transpose()).output(0);
}

Eigen::VectorXd forward_batch(const NetworkParams& params,
                              const Eigen::Ref<const Eigen::MatrixXd>& inputs) {
  return run_forward(params, inputs).output;
}

double loss(const NetworkParams& params, const Batch& batch) {
  if (batch.targets.size() == 0) throw NetError("loss over an empty batch");
  const Eigen::VectorXd pred = forward_batch(params, batch.inputs);
  return (pred - batch.targets).squaredNorm() / static_cast<double>(batch.targets.size());
}

NetworkGradient backward(const NetworkParams& p, const Batch& batch) {
  if (batch.targets.size() == 0) throw NetError("backward over an empty batch");
  const Eigen::Index b = batch.targets.size();
  const Eigen::Index r = p.hidden_width();

  const ForwardPass f = run_forward(p, batch.inputs);
  // d loss / d output, loss = mean squared residual
  const Eigen::VectorXd dout =
      2.0 / static_cast<double>(b) * (f.output - batch.targets);

  NetworkGradient g;
  g.theta.resize(r + 1);
  g.theta(0) = dout.sum();
  g.theta.tail(r) = f.second.transpose() * dout;

  // through the second tanh layer
  const Eigen::MatrixXd dsecond =
      (dout * p.theta.tail(r).transpose()).array() * (1.0 - f.second.array().square());
  g.nu.resize(r, r + 1);
  g.nu.col(0) = dsecond.colwise().sum().transpose();
  g.nu.rightCols(r) = dsecond.transpose() * f.first;

  // through the first tanh layer
  const Eigen::MatrixXd dfirst =
      (dsecond * p.nu.rightCols(r)).array() * (1.0 - f.first.array().square());
  g.upsilon.resize(r, p.input_dim() + 1);
  g.upsilon.col(0) = dfirst.colwise().sum().transpose();
  g.upsilon.rightCols(p.input_dim()) = dfirst.transpose() * batch.inputs;
  return g;
}

void adam_step(AdamState& state, NetworkParams& params, const NetworkGradient& grad) {
  const Eigen::Index n = params.parameter_count();
  if (state.m.size() != n)
    throw NetError("Adam state does not match the parameter layout");

  Eigen::VectorXd flat(n);
  flat << grad.theta,
      Eigen::Map<const Eigen::VectorXd>(grad.nu.data(), grad.nu.size()),
      Eigen::Map<const Eigen::VectorXd>(grad.upsilon.data(), grad.upsilon.size());

  const AdamConfig& c = state.config;
  state.step += 1;
  state.m = c.beta1 * state.m + (1.0 - c.beta1) * flat;
  state.v = c.beta2 * state.v + (1.0 - c.beta2) * flat.cwiseProduct(flat);
  const double p = static_cast<double>(state.step);
  const double mcorr = 1.0 - std::pow(c.beta1, p);
  const double vcorr = 1.0 - std::pow(c.beta2, p);

  Eigen::VectorXd update =
      (state.m / mcorr).array() /
      ((state.v / vcorr).array().sqrt() + c.eps) * c.alpha;

  Eigen::Index off = 0;
  params.theta -= update.segment(off, params.theta.size());
  off += params.theta.size();
  Eigen::Map<Eigen::VectorXd>(params.nu.data(), params.nu.size()) -=
      update.segment(off, params.nu.size());
  off += params.nu.size();
  Eigen::Map<Eigen::VectorXd>(params.upsilon.data(), params.upsilon.size()) -=
      update.segment(off, params.upsilon.size());
}

void project_constraints(NetworkParams& params) {
  const double tsum = params.theta.cwiseAbs().sum();
  if (tsum > params.v2) params.theta *= params.v2 / tsum;
  for (Eigen::Index i = 0; i < params.nu.rows(); ++i) {
    const double s = params.nu.row(i).cwiseAbs().sum();
    if (s > params.v2) params.nu.row(i) *= params.v2 / s;
  }
  for (Eigen::Index j = 0; j < params.upsilon.rows(); ++j) {
    const double s = params.upsilon.row(j).cwiseAbs().sum();
    if (s > params.v1) params.upsilon.row(j) *= params.v1 / s;
  }
}

double lipschitz_bound(double r, double p, double gamma, double v1, double v2) {
  if (r < 0.0 || p <= 0.0 || gamma <= 0.0 || v1 <= 0.0 || v2 <= 0.0)
    throw NetError("lipschitz_bound arguments must be positive (r >= 0)");
  const double terms = (r + 1.0) * (p + 1.0) * gamma + (p + 1.0) * gamma;
  const double root = v1 * v2 * terms;
  return root * root;
}

void save_params(const NetworkParams& p, std::ostream& out) {
  std::ostringstream os;
  os.precision(17);
  os << "# q=" << p.input_dim() << " r=" << p.hidden_width()
     << " v1=" << p.v1 << " v2=" << p.v2 << "\n";
  os << "layer,row,col,value\n";
  for (Eigen::Index i = 0; i < p.theta.size(); ++i)
    os << "theta,0," << i << "," << p.theta(i) << "\n";
  for (Eigen::Index i = 0; i < p.nu.rows(); ++i)
    for (Eigen::Index j = 0; j < p.nu.cols(); ++j)
      os << "nu," << i << "," << j << "," << p.nu(i, j) << "\n";
  for (Eigen::Index i = 0; i < p.upsilon.rows(); ++i)
    for (Eigen::Index j = 0; j < p.upsilon.cols(); ++j)
      os << "upsilon," << i << "," << j << "," << p.upsilon(i, j) << "\n";
  out << os.str();
}

NetworkParams load_params(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# q=", 0) != 0)
    throw NetError("parameter snapshot missing shape header");
  Eigen::Index q, r;
  double v1, v2;
  if (std::sscanf(line.c_str(), "# q=%ld r=%ld v1=%lf v2=%lf", &q, &r, &v1, &v2) != 4)
    throw NetError("malformed parameter snapshot header");
  std::getline(in, line);  // column header

  NetworkParams p;
  p.v1 = v1;
  p.v2 = v2;
  p.theta = Eigen::VectorXd::Zero(r + 1);
  p.nu = Eigen::MatrixXd::Zero(r, r + 1);
  p.upsilon = Eigen::MatrixXd::Zero(r, q + 1);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string layer, row, col, value;
    std::getline(ls, layer, ',');
    std::getline(ls, row, ',');
    std::getline(ls, col, ',');
    std::getline(ls, value, ',');
    const Eigen::Index i = std::stol(row);
    const Eigen::Index j = std::stol(col);
    const double v = std::stod(value);
    if (layer == "theta") p.theta(j) = v;
    else if (layer == "nu") p.nu(i, j) = v;
    else if (layer == "upsilon") p.upsilon(i, j) = v;
    else throw NetError("unknown layer '" + layer + "' in parameter snapshot");
  }
  return p;
}

}  // namespace latticenn
