#include <doctest.h>

#include <cmath>
#include <sstream>

#include "latticenn/net.hpp"
#include "latticenn/rng.hpp"

using namespace latticenn;

namespace {

Eigen::VectorXd flatten(const NetworkParams& p) {
  Eigen::VectorXd out(p.parameter_count());
  out << p.theta, Eigen::Map<const Eigen::VectorXd>(p.nu.data(), p.nu.size()),
      Eigen::Map<const Eigen::VectorXd>(p.upsilon.data(), p.upsilon.size());
  return out;
}

void unflatten(NetworkParams& p, const Eigen::VectorXd& flat) {
  Eigen::Index off = 0;
  p.theta = flat.segment(off, p.theta.size());
  off += p.theta.size();
  Eigen::Map<Eigen::VectorXd>(p.nu.data(), p.nu.size()) = flat.segment(off, p.nu.size());
  off += p.nu.size();
  Eigen::Map<Eigen::VectorXd>(p.upsilon.data(), p.upsilon.size()) =
      flat.segment(off, p.upsilon.size());
}

NetworkParams random_params(Eigen::Index q, Eigen::Index r, std::uint64_t seed,
                            double v1 = 4.0, double v2 = 4.0) {
  NetworkParams p = init_params({q, r}, v1, v2, seed);
  // spread the weights around rather than staying at the tiny init amplitude
  RandomStream stream(derive_seed(seed, "spread", 1));
  for (Eigen::Index i = 0; i < p.theta.size(); ++i) p.theta(i) = stream.uniform(-1.0, 1.0);
  for (Eigen::Index i = 0; i < p.nu.size(); ++i) p.nu.data()[i] = stream.uniform(-1.0, 1.0);
  for (Eigen::Index i = 0; i < p.upsilon.size(); ++i)
    p.upsilon.data()[i] = stream.uniform(-1.0, 1.0);
  project_constraints(p);
  return p;
}

Batch random_batch(Eigen::Index b, Eigen::Index q, std::uint64_t seed) {
  RandomStream stream(seed);
  Batch batch;
  batch.inputs.resize(b, q);
  batch.targets.resize(b);
  for (Eigen::Index i = 0; i < b; ++i) {
    for (Eigen::Index k = 0; k < q; ++k) batch.inputs(i, k) = stream.uniform(-1.0, 1.0);
    batch.targets(i) = stream.uniform(-1.0, 1.0);
  }
  return batch;
}

// Central finite differences over every parameter.
double max_grad_rel_error(const NetworkParams& params, const Batch& batch) {
  const NetworkGradient g = backward(params, batch);
  Eigen::VectorXd analytic(params.parameter_count());
  analytic << g.theta, Eigen::Map<const Eigen::VectorXd>(g.nu.data(), g.nu.size()),
      Eigen::Map<const Eigen::VectorXd>(g.upsilon.data(), g.upsilon.size());

  const Eigen::VectorXd flat = flatten(params);
  NetworkParams probe = params;
  const double step = 1e-5;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    Eigen::VectorXd shifted = flat;
    shifted(i) = flat(i) + step;
    unflatten(probe, shifted);
    const double up = loss(probe, batch);
    shifted(i) = flat(i) - step;
    unflatten(probe, shifted);
    const double down = loss(probe, batch);
    const double numeric = (up - down) / (2.0 * step);
    const double scale = std::max({std::abs(numeric), std::abs(analytic(i)), 1e-8});
    worst = std::max(worst, std::abs(numeric - analytic(i)) / scale);
  }
  return worst;
}

}  // namespace

TEST_CASE("init_params respects budgets and is deterministic") {
  const NetworkParams p = init_params({3, 2}, 2.0, 2.0, 11);
  CHECK(p.theta.cwiseAbs().sum() <= 2.0);
  for (Eigen::Index i = 0; i < p.nu.rows(); ++i)
    CHECK(p.nu.row(i).cwiseAbs().sum() <= 2.0);
  for (Eigen::Index j = 0; j < p.upsilon.rows(); ++j)
    CHECK(p.upsilon.row(j).cwiseAbs().sum() <= 2.0);
  // amplitude for r=2, q=3, V=2: min(0.5, 2/4, 2/3) = 0.5
  CHECK(p.upsilon.cwiseAbs().maxCoeff() <= 0.5);

  const NetworkParams q = init_params({3, 2}, 2.0, 2.0, 11);
  CHECK(flatten(p) == flatten(q));
  CHECK(flatten(p) != flatten(init_params({3, 2}, 2.0, 2.0, 12)));

  CHECK_THROWS_AS(init_params({3, 2}, 1.0, 2.0, 1), NetError);
}

TEST_CASE("forward examples") {
  // all weights zero except the output bias
  NetworkParams p = init_params({2, 3}, 2.0, 2.0, 0);
  p.theta.setZero();
  p.nu.setZero();
  p.upsilon.setZero();
  p.theta(0) = 1.25;
  Eigen::VectorXd x(2);
  x << 0.4, -0.9;
  CHECK(forward(p, x) == doctest::Approx(1.25));

  // r=1, q=1 identity-ish wiring: tanh(tanh(1))
  NetworkParams chain = init_params({1, 1}, 2.0, 2.0, 0);
  chain.theta << 0.0, 1.0;
  chain.nu << 0.0, 1.0;
  chain.upsilon << 0.0, 1.0;
  Eigen::VectorXd one(1);
  one << 1.0;
  CHECK(forward(chain, one) == doctest::Approx(0.64201499201199982).epsilon(1e-14));

  // odd wiring negates with the input
  Eigen::VectorXd minus(1);
  minus << -1.0;
  CHECK(forward(chain, minus) == doctest::Approx(-forward(chain, one)).epsilon(1e-14));

  Eigen::VectorXd wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS(forward(chain, wrong), NetError);
}

TEST_CASE("output bound under the constraints") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const NetworkParams p = random_params(6, 4, seed, 3.0, 2.5);
    const Batch b = random_batch(8, 6, seed + 100);
    const Eigen::VectorXd out = forward_batch(p, b.inputs);
    CHECK(out.cwiseAbs().maxCoeff() <= 2.0 * p.v2);
  }
}

TEST_CASE("loss examples") {
  NetworkParams p = init_params({1, 1}, 2.0, 2.0, 0);
  p.theta.setZero();
  p.nu.setZero();
  p.upsilon.setZero();

  Batch b;
  b.inputs.resize(2, 1);
  b.inputs.setZero();
  b.targets.resize(2);
  b.targets << 1.0, -3.0;  // residuals (1, -3) against zero predictions
  CHECK(loss(p, b) == doctest::Approx(5.0));

  b.targets.setZero();
  CHECK(loss(p, b) == doctest::Approx(0.0));

  Batch empty;
  empty.inputs.resize(0, 1);
  empty.targets.resize(0);
  CHECK_THROWS_AS(loss(p, empty), NetError);
}

TEST_CASE("backward: zero residual gives zero gradient; bias path is exact") {
  NetworkParams p = init_params({2, 2}, 2.0, 2.0, 3);
  Batch b = random_batch(4, 2, 17);
  b.targets = forward_batch(p, b.inputs);  // perfect predictions
  const NetworkGradient g = backward(p, b);
  CHECK(g.theta.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(g.nu.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(g.upsilon.cwiseAbs().maxCoeff() < 1e-14);

  // near-zero weights: d loss / d theta_0 = 2 mean(residual)
  NetworkParams tiny = p;
  tiny.theta.setConstant(1e-9);
  tiny.nu.setConstant(1e-9);
  tiny.upsilon.setConstant(1e-9);
  tiny.theta(0) = 0.7;
  Batch batch = random_batch(5, 2, 23);
  const NetworkGradient g2 = backward(tiny, batch);
  const double expected =
      2.0 * (forward_batch(tiny, batch.inputs) - batch.targets).mean();
  CHECK(g2.theta(0) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("gradient matches central finite differences on random networks") {
  RandomStream dims(42);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto q = static_cast<Eigen::Index>(1 + dims.next_u64() % 10);
    const auto r = static_cast<Eigen::Index>(1 + dims.next_u64() % 5);
    const auto b = static_cast<Eigen::Index>(1 + dims.next_u64() % 8);
    const NetworkParams p = random_params(q, r, 1000 + static_cast<std::uint64_t>(trial));
    const Batch batch = random_batch(b, q, 2000 + static_cast<std::uint64_t>(trial));
    worst = std::max(worst, max_grad_rel_error(p, batch));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("adam first step follows the sign of the gradient exactly") {
  NetworkParams p = init_params({1, 1}, 2.0, 2.0, 0);
  p.theta.setZero();
  p.nu.setZero();
  p.upsilon.setZero();
  AdamState state = AdamState::init(p, AdamConfig{});

  NetworkGradient g;
  g.theta = Eigen::VectorXd::Zero(2);
  g.nu = Eigen::MatrixXd::Zero(1, 2);
  g.upsilon = Eigen::MatrixXd::Zero(1, 2);

  // zero gradient leaves parameters unchanged
  adam_step(state, p, g);
  CHECK(flatten(p).cwiseAbs().maxCoeff() == 0.0);

  // g = 1 on a single parameter: delta = -alpha / (1 + eps)
  AdamState fresh = AdamState::init(p, AdamConfig{});
  g.theta(1) = 1.0;
  NetworkParams single = p;
  adam_step(fresh, single, g);
  CHECK(single.theta(1) == doctest::Approx(-1e-3 / (1.0 + 1e-8)).epsilon(1e-12));

  // g = -2: same magnitude, opposite sign
  AdamState fresh2 = AdamState::init(p, AdamConfig{});
  g.theta(1) = -2.0;
  NetworkParams negative = p;
  adam_step(fresh2, negative, g);
  CHECK(negative.theta(1) == doctest::Approx(1e-3 / (1.0 + 1e-8)).epsilon(1e-9));
}

TEST_CASE("adam with a constant gradient walks against its sign") {
  NetworkParams p = init_params({1, 1}, 2.0, 2.0, 0);
  p.theta.setZero();
  p.nu.setZero();
  p.upsilon.setZero();
  AdamState state = AdamState::init(p, AdamConfig{});
  NetworkGradient g;
  g.theta = Eigen::VectorXd::Zero(2);
  g.nu = Eigen::MatrixXd::Zero(1, 2);
  g.upsilon = Eigen::MatrixXd::Zero(1, 2);
  g.theta(1) = 0.5;
  double prev = 0.0;
  for (int step = 0; step < 50; ++step) {
    adam_step(state, p, g);
    CHECK(p.theta(1) < prev);
    prev = p.theta(1);
  }
}

TEST_CASE("project_constraints rescales offending rows only") {
  NetworkParams p = init_params({3, 2}, 2.0, 3.0, 5);
  p.theta << 2.0, -2.0, 2.0;  // L1 = 6 = 2 * v2
  const Eigen::MatrixXd nu_before = p.nu;
  project_constraints(p);
  CHECK(p.theta(0) == doctest::Approx(1.0));
  CHECK(p.theta(1) == doctest::Approx(-1.0));
  CHECK(p.nu == nu_before);  // within budget, untouched

  // idempotence
  NetworkParams twice = p;
  project_constraints(twice);
  CHECK((flatten(twice) - flatten(p)).cwiseAbs().maxCoeff() < 1e-12);

  // never increases a row norm, preserves zero rows
  NetworkParams z = init_params({3, 2}, 2.0, 2.0, 6);
  z.upsilon.row(0).setZero();
  const double before = z.upsilon.row(1).cwiseAbs().sum();
  project_constraints(z);
  CHECK(z.upsilon.row(0).cwiseAbs().sum() == 0.0);
  CHECK(z.upsilon.row(1).cwiseAbs().sum() <= before + 1e-15);
}

TEST_CASE("lipschitz_bound formula") {
  CHECK(lipschitz_bound(2, 1, 3, 2.0, 2.0) == doctest::Approx(9216.0));
  CHECK(lipschitz_bound(0, 1, 3, 2.0, 2.0) ==
        doctest::Approx(std::pow(4.0 * 2.0 * 2.0 * 3.0, 2)));
  CHECK(lipschitz_bound(2, 1, 3, 1.0, 1.0) ==
        doctest::Approx(std::pow((2.0 + 2.0) * 2.0 * 3.0 + 0.0, 2)).epsilon(1e-12));
  CHECK_THROWS_AS(lipschitz_bound(2, 0, 3, 2.0, 2.0), NetError);
}

TEST_CASE("parameter-space Lipschitz property holds empirically") {
  const Eigen::Index q = 8, r = 3;
  const double p_count = 1.0, gamma = 8.0;  // q = (p+1)*gamma
  const double v1 = 2.0, v2 = 2.0;
  const double vstar = lipschitz_bound(static_cast<double>(r), p_count, gamma, v1, v2);
  RandomStream stream(99);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const NetworkParams a = random_params(q, r, 5000 + static_cast<std::uint64_t>(trial), v1, v2);
    const NetworkParams b = random_params(q, r, 9000 + static_cast<std::uint64_t>(trial), v1, v2);
    double gap_sq = 0.0;
    const int samples = 16;
    for (int s = 0; s < samples; ++s) {
      Eigen::VectorXd x(q);
      for (Eigen::Index k = 0; k < q; ++k) x(k) = stream.uniform(-1.0, 1.0);
      const double gap = forward(a, x) - forward(b, x);
      gap_sq += gap * gap;
    }
    gap_sq /= samples;
    const double dist_sq = (flatten(a) - flatten(b)).squaredNorm();
    if (gap_sq > vstar * dist_sq) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("parameter snapshots round-trip bit-exactly") {
  const NetworkParams p = random_params(5, 3, 77, 2.5, 3.5);
  std::stringstream buffer;
  save_params(p, buffer);
  const NetworkParams q = load_params(buffer);
  CHECK(q.v1 == p.v1);
  CHECK(q.v2 == p.v2);
  CHECK(flatten(q) == flatten(p));  // exact, not approximate
}
