#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "mollm/losses.hpp"
#include "mollm/rng.hpp"

using namespace mollm;

namespace {

TokenBatch batch_for(std::vector<int> targets, int vocab) {
  TokenBatch b;
  b.targets = Eigen::Map<Eigen::VectorXi>(targets.data(), static_cast<Index>(targets.size()));
  b.contexts = Eigen::MatrixXi(0, 0);
  b.vocab = vocab;
  return b;
}

// Rows where the target gets `p` and the rest is spread over one other slot.
Eigen::MatrixXd rows_with_target_prob(const std::vector<double>& p, const TokenBatch& b) {
  Eigen::MatrixXd probs = Eigen::MatrixXd::Zero(static_cast<Index>(p.size()), b.vocab);
  for (Index i = 0; i < probs.rows(); ++i) {
    const int t = b.targets(i);
    probs(i, t) = p[static_cast<std::size_t>(i)];
    probs(i, (t + 1) % b.vocab) = 1.0 - p[static_cast<std::size_t>(i)];
  }
  return probs;
}

Eigen::MatrixXd random_simplex_rows(SeededRng& rng, Index rows, Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    double total = 0;
    for (Index c = 0; c < cols; ++c) {
      m(i, c) = rng.uniform() + 1e-6;
      total += m(i, c);
    }
    m.row(i) /= total;
  }
  return m;
}

Eigen::MatrixXd random_logits(SeededRng& rng, Index rows, Index cols, double scale = 2.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) m(i, c) = rng.uniform(-scale, scale);
  }
  return m;
}

}  // namespace

TEST_CASE("ce_loss hand values and divergence sentinel") {
  const auto b1 = batch_for({0, 1, 0}, 3);
  CHECK(ce_loss(rows_with_target_prob({1.0, 1.0, 1.0}, b1), b1).value == 0.0);

  const auto b2 = batch_for({0}, 2);
  CHECK(ce_loss(rows_with_target_prob({0.5}, b2), b2).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const auto b3 = batch_for({0, 1}, 4);
  CHECK(ce_loss(rows_with_target_prob({1.0, 0.25}, b3), b3).value ==
        doctest::Approx(std::log(4.0) / 2.0).epsilon(1e-12));

  const auto diverged = ce_loss(rows_with_target_prob({0.0}, b2), b2);
  CHECK(diverged.diverged);
  CHECK(diverged.value == std::numeric_limits<double>::infinity());
  CHECK_FALSE(std::isnan(diverged.value));
}

TEST_CASE("uce_loss hand values, bounds, and epsilon validation") {
  const auto b = batch_for({0}, 2);
  CHECK(uce_loss(rows_with_target_prob({0.0}, b), b, 0.5).value == 0.0);
  CHECK(uce_loss(rows_with_target_prob({1.0}, b), b, 0.01).value ==
        doctest::Approx(-std::log(0.01)).epsilon(1e-12));
  CHECK(uce_loss(rows_with_target_prob({0.5}, b), b, 0.01).value ==
        doctest::Approx(-std::log(0.505)).epsilon(1e-12));

  CHECK_THROWS_AS(uce_loss(rows_with_target_prob({0.5}, b), b, 0.0), ValidationError);
  CHECK_THROWS_AS(uce_loss(rows_with_target_prob({0.5}, b), b, 1.0), ValidationError);
  CHECK_THROWS_AS(uce_loss(rows_with_target_prob({0.5}, b), b, -0.2), ValidationError);

  SeededRng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const double eps = rng.uniform(0.001, 0.5);
    const auto batch = batch_for({rng.uniform_int(4)}, 4);
    const auto probs = random_simplex_rows(rng, 1, 4);
    const double value = uce_loss(probs, batch, eps).value;
    CHECK(value >= 0.0);
    CHECK(value <= -std::log(eps) + 1e-12);
  }
}

TEST_CASE("uce monotone non-decreasing in the target probability") {
  const auto b = batch_for({0}, 2);
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const double v = uce_loss(rows_with_target_prob({p}, b), b, 0.01).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("kl_retention hand values and sentinel") {
  Eigen::MatrixXd ref(1, 2), cur(1, 2);
  ref << 0.5, 0.5;
  CHECK(kl_retention(ref, ref).value == 0.0);

  cur << 0.25, 0.75;
  CHECK(kl_retention(ref, cur).value ==
        doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0)).epsilon(1e-12));

  ref << 1.0, 0.0;
  cur << 0.5, 0.5;
  CHECK(kl_retention(ref, cur).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Eigen::MatrixXd zero_cur(1, 2);
  zero_cur << 0.0, 1.0;
  const auto diverged = kl_retention(ref, zero_cur);
  CHECK(diverged.diverged);
  CHECK(diverged.value == std::numeric_limits<double>::infinity());

  const Eigen::MatrixXd wrong_shape = Eigen::MatrixXd::Constant(2, 2, 0.5);
  CHECK_THROWS_AS(kl_retention(ref, wrong_shape), ValidationError);
}

TEST_CASE("kl_retention non-negative on random simplex pairs") {
  SeededRng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_simplex_rows(rng, 2, 5);
    const auto q = random_simplex_rows(rng, 2, 5);
    CHECK(kl_retention(p, q).value >= 0.0);
    CHECK(kl_retention(p, p).value == 0.0);
  }
}

TEST_CASE("ce_logit_gradient hand values") {
  const auto b = batch_for({0}, 2);
  Eigen::MatrixXd z(1, 2);
  z << 0, 0;
  Eigen::MatrixXd expected(1, 2);
  expected << -0.5, 0.5;
  CHECK(ce_logit_gradient(z, b).isApprox(expected, 1e-12));

  z << 800, 0;  // target probability numerically 1
  CHECK(ce_logit_gradient(z, b).norm() <= 1e-12);

  const auto b1 = batch_for({1}, 2);
  z << std::log(3.0), 0;
  expected << 0.75, -0.75;
  CHECK(ce_logit_gradient(z, b1).isApprox(expected, 1e-12));
}

TEST_CASE("uce_logit_gradient hand values and bound") {
  const auto b = batch_for({0}, 2);
  Eigen::MatrixXd z(1, 2);
  z << -800, 0;  // target probability exactly 0
  CHECK(uce_logit_gradient(z, b, 0.01).norm() == 0.0);

  // p = (0.5, 0.5): dL/dp_t = 0.99/0.505; chain through softmax.
  z << 0, 0;
  const double factor = 0.99 / 0.505 * 0.5;
  Eigen::MatrixXd expected(1, 2);
  expected << factor * 0.5, -factor * 0.5;
  CHECK(uce_logit_gradient(z, b, 0.01).isApprox(expected, 1e-12));

  // |dL/dp_t| at p_t = 1 - 1e-9 stays under (1-eps)/eps = 99.
  const double pt = 1.0 - 1e-9;
  const double dldp = 0.99 / (1.0 - 0.99 * pt);
  CHECK(dldp <= 99.0);
  CHECK(dldp == doctest::Approx(99.0).epsilon(1e-7));
}

TEST_CASE("uce per-token derivative bound attained on a grid") {
  const double eps = 0.01;
  double sup = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double p = static_cast<double>(i) / 10000.0;
    sup = std::max(sup, std::abs((1.0 - eps) / (1.0 - (1.0 - eps) * p)));
  }
  CHECK(std::abs(sup - (1.0 - eps) / eps) <= 1e-9 * ((1.0 - eps) / eps));
}

TEST_CASE("ce unboundedness witness") {
  const auto b = batch_for({0}, 2);
  double prev = 0.0;
  for (int k = 1; k <= 12; ++k) {
    const double value = ce_loss(rows_with_target_prob({std::pow(10.0, -k)}, b), b).value;
    CHECK(value == doctest::Approx(k * std::log(10.0)).epsilon(1e-9));
    CHECK(value > prev);
    prev = value;
  }
}

TEST_CASE("forget and retain objectives aggregate by summation") {
  CHECK(forget_objective<double>({}, ForgetMode::Uce, 0.01).value == 0.0);
  CHECK(forget_objective<double>({}, ForgetMode::GaCe, 0.01).value == 0.0);
  CHECK(retain_objective<double>({}).value == 0.0);

  const auto b = batch_for({0}, 2);
  std::vector<SequenceEval<double>> one{{rows_with_target_prob({1.0}, b), b}};
  CHECK(forget_objective(one, ForgetMode::Uce, 0.01).value ==
        doctest::Approx(-std::log(0.01)).epsilon(1e-12));

  std::vector<SequenceEval<double>> half{{rows_with_target_prob({0.5}, b), b}};
  CHECK(forget_objective(half, ForgetMode::GaCe, 0.01).value ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(forget_objective(half, ForgetMode::GaCe, 0.01).value < 0.0);

  CHECK(retain_objective(one).value == 0.0);
  CHECK(retain_objective(half).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  std::vector<SequenceEval<double>> two{{rows_with_target_prob({0.5}, b), b},
                                        {rows_with_target_prob({0.5}, b), b}};
  CHECK(retain_objective(two).value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("analytic logit gradients match finite differences") {
  SeededRng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int vocab = 2 + rng.uniform_int(6);
    const Index k = 1 + rng.uniform_int(5);
    std::vector<int> targets;
    for (Index i = 0; i < k; ++i) targets.push_back(rng.uniform_int(vocab));
    const auto b = batch_for(targets, vocab);
    const Eigen::MatrixXd z = random_logits(rng, k, vocab);

    const double ce_err = finite_difference_check(
        [&](const Eigen::MatrixXd& logits) {
          return ce_loss(softmax_rows(logits), b).value;
        },
        z, ce_logit_gradient(z, b));
    CHECK(ce_err < 1e-5);

    const double eps = 0.01;
    const double uce_err = finite_difference_check(
        [&](const Eigen::MatrixXd& logits) {
          return uce_loss(softmax_rows(logits), b, eps).value;
        },
        z, uce_logit_gradient(z, b, eps));
    CHECK(uce_err < 1e-5);
  }
}

TEST_CASE("finite_difference_check is exact for a constant loss") {
  const Eigen::MatrixXd at = Eigen::MatrixXd::Zero(2, 3);
  const double err = finite_difference_check(
      [](const Eigen::MatrixXd&) { return 1.25; }, at, Eigen::MatrixXd::Zero(2, 3));
  CHECK(err == 0.0);
}
