#include "gielab/werner.hpp"

#include <doctest.h>

#include <cmath>

using namespace gielab;

// Measuring Eve's qubit in the eigenbasis of her reduced state is expected to attain
// the lower bound, with the gap shrinking as the Fock cutoff grows.

TEST_CASE("eigenbasis strategy attains the lower bound at p = 0.5, lambda = 0.3") {
  const WernerParams w{0.5, 0.3, 40};
  CHECK(std::abs(eve_strategy_cmi(w, EveStrategy::Eigenbasis) - lower_bound(w)) < 1e-6);
}

TEST_CASE("eigenbasis gap to the lower bound vanishes as the cutoff grows") {
  double prev = INFINITY;
  for (int cutoff : {10, 20, 40, 80}) {
    const WernerParams w{0.5, 0.3, cutoff};
    const double gap = eve_strategy_cmi(w, EveStrategy::Eigenbasis) - lower_bound(w);
    MESSAGE("cutoff " << cutoff << ": gap " << gap << ", tail mass " << w.tail_mass());
    CHECK(gap <= 10 * w.tail_mass() + 1e-12);
    CHECK(gap <= prev + 1e-12);
    prev = gap;
  }
}
