#include "werner_oracle.hpp"

#include "gielab/error.hpp"
#include "gielab/werner.hpp"

#include <doctest.h>

#include <random>

using namespace gielab;

namespace {

testing::WernerOracle oracle(const WernerParams& w) { return {w.p, w.lambda, w.cutoff}; }

QubitPovm random_povm(std::mt19937_64& rng) {
  // Projective measurement in a random real basis.
  const double t = std::uniform_real_distribution<double>(0, 3.14159)(rng);
  const Eigen::Vector2d u(std::cos(t), std::sin(t)), v(-std::sin(t), std::cos(t));
  return {{u * u.transpose(), v * v.transpose()}};
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(WernerParams{0.5, 0.3, 40}.validate());
  CHECK_THROWS_AS((WernerParams{1.5, 0.3, 40}.validate()), Error);
  CHECK_THROWS_AS((WernerParams{0.5, 1.0, 40}.validate()), Error);
  CHECK_THROWS_AS((WernerParams{0.5, 0.3, -1}.validate()), Error);
  CHECK(WernerParams{0.5, 0.3, 40}.tail_mass() < kTailWarning);
  CHECK(WernerParams{0.5, 0.99, 5}.tail_mass() > kTailWarning);
}

TEST_CASE("POVM validation and the standard strategies") {
  const WernerParams w;
  for (auto s : {EveStrategy::Eigenbasis, EveStrategy::Computational, EveStrategy::PlusMinus, EveStrategy::Drop}) {
    CHECK_NOTHROW(strategy_povm(w, s).validate());
    CHECK(parse_strategy(strategy_name(s)) == s);
  }
  CHECK_THROWS_AS(parse_strategy("nope"), Error);
  QubitPovm bad{{Eigen::Matrix2d::Identity() * 0.5}};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("joint pmf is diagonal in photon number and sums to the kept mass") {
  const WernerParams w{0.4, 0.5, 30};
  const auto pmf = joint_pmf(w, QubitPovm::computational());
  double off = 0;
  for (int m = 0; m <= w.cutoff; ++m) {
    for (int n = 0; n <= w.cutoff; ++n) {
      if (m != n) off += pmf.at(m, n, 0) + pmf.at(m, n, 1);
    }
  }
  CHECK(off == 0.0);
  CHECK(pmf.total() == doctest::Approx(1.0 - w.tail_mass()).epsilon(1e-13));
  const auto o = oracle(w);
  for (int m = 0; m < 5; ++m) {
    for (int k = 0; k < 2; ++k) {
      const Eigen::Vector2d v = o.amplitude(m, m);
      const Eigen::Matrix2d pk = QubitPovm::computational().elements[k];
      CHECK(pmf.at(m, m, k) == doctest::Approx(v.dot(pk * v)).epsilon(1e-13));
    }
  }
}

TEST_CASE("entropies and the lower bound agree with the truncated density matrix") {
  for (double p : {0.1, 0.5, 0.9}) {
    for (double l : {0.2, 0.3, 0.6}) {
      const WernerParams w{p, l, 60};
      const auto o = oracle(w);
      CHECK(photon_entropy_A(w) == doctest::Approx(o.entropy_a()).epsilon(1e-10));
      CHECK(eve_entropy(w) == doctest::Approx(o.entropy_e()).epsilon(1e-10));
      CHECK(lower_bound(w) == doctest::Approx(o.lower_bound()).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("CMI matches the oracle for each strategy and for random projective POVMs") {
  std::mt19937_64 rng(501);
  const WernerParams w{0.5, 0.3, 40};
  const auto o = oracle(w);
  for (auto s : {EveStrategy::Eigenbasis, EveStrategy::Computational, EveStrategy::PlusMinus, EveStrategy::Drop}) {
    CHECK(eve_strategy_cmi(w, s) == doctest::Approx(o.cmi(strategy_povm(w, s).elements)).epsilon(1e-10));
  }
  for (int i = 0; i < 10; ++i) {
    const auto povm = random_povm(rng);
    CHECK(conditional_mutual_info(joint_pmf(w, povm)) == doctest::Approx(o.cmi(povm.elements)).epsilon(1e-10));
  }
}

TEST_CASE("pmf entropies satisfy the chain-rule identities") {
  const WernerParams w{0.7, 0.4, 40};
  const auto pmf = joint_pmf(w, QubitPovm::plus_minus());
  const auto h = pmf_entropies(pmf);
  CHECK(conditional_mutual_info(pmf) == doctest::Approx(h.AE + h.BE - h.ABE - h.E));
  // Photon numbers agree, so (A, E) determines B.
  CHECK(h.ABE == doctest::Approx(h.AE).epsilon(1e-12));
  CHECK(h.A == doctest::Approx(photon_entropy_A(w)).epsilon(1e-10));
}

TEST_CASE("every strategy stays above the lower bound") {
  std::mt19937_64 rng(503);
  for (int i = 0; i <= 20; ++i) {
    const WernerParams w{0.05 * i, 0.3, 40};
    const double lb = lower_bound(w);
    for (auto s : {EveStrategy::Eigenbasis, EveStrategy::Computational, EveStrategy::PlusMinus, EveStrategy::Drop}) {
      CHECK(eve_strategy_cmi(w, s) >= lb - 1e-12);
    }
    CHECK(conditional_mutual_info(joint_pmf(w, random_povm(rng))) >= lb - 1e-12);
  }
}

TEST_CASE("Eve's information about A cannot exceed either entropy") {
  const WernerParams w{0.5, 0.3, 40};
  const double ia_e = photon_entropy_A(w) + pmf_entropies(joint_pmf(w, QubitPovm::eigenbasis(w))).E -
                      pmf_entropies(joint_pmf(w, QubitPovm::eigenbasis(w))).AE;
  CHECK(ia_e <= eve_entropy(w) + 1e-12);
  CHECK(ia_e <= photon_entropy_A(w) + 1e-12);
}

TEST_CASE("dropping Eve's outcome gives I(A;B) = H(A)") {
  const WernerParams w{0.3, 0.5, 40};
  CHECK(eve_strategy_cmi(w, EveStrategy::Drop) == doctest::Approx(photon_entropy_A(w)).epsilon(1e-10));
}

TEST_CASE("a finer Eve measurement never increases the CMI") {
  // B is a function of A, so the CMI is H(A|E); merging both outcomes gives Drop.
  const WernerParams w{0.6, 0.35, 40};
  CHECK(eve_strategy_cmi(w, EveStrategy::Computational) <= eve_strategy_cmi(w, EveStrategy::Drop) + 1e-12);
  CHECK(eve_strategy_cmi(w, EveStrategy::PlusMinus) <= eve_strategy_cmi(w, EveStrategy::Drop) + 1e-12);
}

TEST_CASE("results converge in the cutoff") {
  const WernerParams lo{0.5, 0.3, 20}, hi{0.5, 0.3, 80};
  CHECK(std::abs(lower_bound(lo) - lower_bound(hi)) < 1e-12);
  CHECK(std::abs(eve_strategy_cmi(lo, EveStrategy::Eigenbasis) - eve_strategy_cmi(hi, EveStrategy::Eigenbasis)) < 1e-12);
}

namespace {

double info_a_e(const WernerParams& w, const QubitPovm& povm) {
  const auto h = pmf_entropies(joint_pmf(w, povm));
  return h.A + h.E - h.AE;
}

}  // namespace

TEST_CASE("I(A;E) is bounded by both marginal entropies for random POVMs") {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 40; ++i) {
    const WernerParams w{u(rng), 0.05 + 0.8 * u(rng), 60};
    const auto o = oracle(w);
    const double cap = std::min(o.entropy_a(), o.entropy_e());
    CHECK(info_a_e(w, random_povm(rng)) <= cap + 1e-12);
    CHECK(info_a_e(w, QubitPovm::eigenbasis(w)) <= cap + 1e-12);
  }
}

TEST_CASE("classical post-processing of Eve's outcome never increases I(A;E)") {
  std::mt19937_64 rng(507);
  std::uniform_real_distribution<double> u(0, 1);
  const WernerParams w{0.5, 0.3, 40};
  for (int i = 0; i < 30; ++i) {
    const auto povm = random_povm(rng);
    // Column-stochastic P(k'|k) with three outputs.
    Eigen::Matrix<double, 3, 2> p;
    for (int k = 0; k < 2; ++k) {
      double sum = 0;
      for (int j = 0; j < 3; ++j) sum += (p(j, k) = u(rng));
      p.col(k) /= sum;
    }
    QubitPovm processed;
    for (int j = 0; j < 3; ++j) processed.elements.push_back(p(j, 0) * povm.elements[0] + p(j, 1) * povm.elements[1]);
    processed.validate();
    CHECK(info_a_e(w, processed) <= info_a_e(w, povm) + 1e-12);
  }
}

TEST_CASE("photon-number entropy of A dominates the Werner state entropy") {
  for (int i = 0; i <= 10; ++i) {
    for (int j = 1; j <= 9; ++j) {
      const WernerParams w{0.1 * i, 0.1 * j, 200};
      const double lam = w.lambda;
      const double d = std::sqrt(1 - 4 * w.p * (1 - w.p) * lam * lam);
      double s0 = 0;
      for (double e : {(1 + d) / 2, (1 - d) / 2}) {
        if (e > 0) s0 -= e * std::log(e);
      }
      CHECK(oracle(w).entropy_a() >= s0 - 1e-12);
    }
  }
}
