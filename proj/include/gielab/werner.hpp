#pragma once

// Photon-counting statistics of the CV Werner state p |TMSV><TMSV| + (1-p) |00><00|
// with Eve holding the qubit purification, and the resulting lower bound on the
// intrinsic information.

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace gielab {

struct WernerParams {
  double p = 0.5;
  double lambda = 0.3;  // TMSV amplitude ratio, tanh r
  int cutoff = 40;      // largest photon number kept

  /// Throws InvalidArgument on out-of-range values.
  void validate() const;
  /// Probability mass beyond the cutoff: p (1 - lambda^2) lambda^{2(cutoff+1)} / (1 - lambda^2).
  double tail_mass() const;
};

inline constexpr double kTailWarning = 1e-12;

/// Qubit POVM {Pi(k)} on Eve's purifying system in the basis {|0>, |1>}.
struct QubitPovm {
  std::vector<Eigen::Matrix2d> elements;

  /// Throws InvalidArgument unless every element is symmetric PSD and they sum to 1.
  void validate(double tol = 1e-10) const;

  static QubitPovm computational();
  static QubitPovm plus_minus();
  static QubitPovm identity();  // single outcome: Eve ignores her qubit
  /// Projective measurement in the eigenbasis of Eve's reduced state.
  static QubitPovm eigenbasis(const WernerParams& params);
};

/// p(m, n, k) for photon numbers m, n <= cutoff and POVM outcome k.
class JointPmf {
 public:
  JointPmf(int cutoff, int n_outcomes);

  int cutoff() const { return cutoff_; }
  int n_outcomes() const { return k_; }
  double& at(int m, int n, int k) { return t_[index(m, n, k)]; }
  double at(int m, int n, int k) const { return t_[index(m, n, k)]; }
  double total() const;

 private:
  std::size_t index(int m, int n, int k) const {
    return (static_cast<std::size_t>(m) * (cutoff_ + 1) + n) * k_ + k;
  }
  int cutoff_;
  int k_;
  std::vector<double> t_;
};

JointPmf joint_pmf(const WernerParams& params, const QubitPovm& povm);

/// Shannon entropies (nats, 0 ln 0 = 0) of the pmf and its marginals.
struct PmfEntropies {
  double ABE = 0, AE = 0, BE = 0, E = 0, A = 0;
};
PmfEntropies pmf_entropies(const JointPmf& pmf);

/// H(A,E) + H(B,E) - H(A,B,E) - H(E).
double conditional_mutual_info(const JointPmf& pmf);

/// Shannon entropy of Alice's photon-number distribution, in closed form.
double photon_entropy_A(const WernerParams& params);
/// von Neumann entropy of Eve's qubit (= entropy of the Werner state).
double eve_entropy(const WernerParams& params);

/// photon_entropy_A - eve_entropy.
double lower_bound(const WernerParams& params);

enum class EveStrategy { Eigenbasis, Computational, PlusMinus, Drop };

/// Throws InvalidArgument for unknown names.
EveStrategy parse_strategy(std::string_view name);
std::string_view strategy_name(EveStrategy s);
QubitPovm strategy_povm(const WernerParams& params, EveStrategy s);

double eve_strategy_cmi(const WernerParams& params, EveStrategy s);

}  // namespace gielab
