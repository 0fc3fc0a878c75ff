#pragma once

// Truncated Fock-space oracle for the CV Werner state with a qubit purification:
// |psi> = sqrt(p) |TMSV>_AB |0>_E + sqrt(1-p) |00>_AB |1>_E.

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <vector>

namespace testing {

struct WernerOracle {
  double p, lambda;
  int cutoff;

  /// Eve's amplitude vector for photon numbers (m, n).
  Eigen::Vector2d amplitude(int m, int n) const {
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    if (m == n) v(0) = std::sqrt(p) * std::sqrt(1 - lambda * lambda) * std::pow(lambda, m);
    if (m == 0 && n == 0) v(1) = std::sqrt(1 - p);
    return v;
  }

  /// Eve's reduced state, summed over the truncated AB basis.
  Eigen::Matrix2d rho_e() const {
    Eigen::Matrix2d r = Eigen::Matrix2d::Zero();
    for (int m = 0; m <= cutoff; ++m) {
      for (int n = 0; n <= cutoff; ++n) {
        const Eigen::Vector2d v = amplitude(m, n);
        r += v * v.transpose();
      }
    }
    return r;
  }

  double entropy_e() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(rho_e());
    double s = 0;
    for (int i = 0; i < 2; ++i) {
      const double e = es.eigenvalues()(i);
      if (e > 0) s -= e * std::log(e);
    }
    return s;
  }

  /// Shannon entropy of Alice's photon number, from the diagonal of rho_A.
  double entropy_a() const {
    double s = 0;
    for (int m = 0; m <= cutoff; ++m) {
      double pm = 0;
      for (int n = 0; n <= cutoff; ++n) pm += amplitude(m, n).squaredNorm();
      if (pm > 0) s -= pm * std::log(pm);
    }
    return s;
  }

  double lower_bound() const { return entropy_a() - entropy_e(); }

  /// I(A;B|E) for photon counting on A, B and the POVM on E.
  double cmi(const std::vector<Eigen::Matrix2d>& povm) const {
    std::map<std::vector<int>, double> abe, ae, be, e;
    for (int m = 0; m <= cutoff; ++m) {
      for (int n = 0; n <= cutoff; ++n) {
        const Eigen::Vector2d v = amplitude(m, n);
        for (int k = 0; k < static_cast<int>(povm.size()); ++k) {
          const double q = v.dot(povm[k] * v);
          abe[{m, n, k}] += q;
          ae[{m, k}] += q;
          be[{n, k}] += q;
          e[{k}] += q;
        }
      }
    }
    auto h = [](const std::map<std::vector<int>, double>& d) {
      double s = 0;
      for (const auto& [key, q] : d) {
        if (q > 0) s -= q * std::log(q);
      }
      return s;
    };
    return h(ae) + h(be) - h(abe) - h(e);
  }
};

}  // namespace testing
