#include "gielab/werner.hpp"

#include "gielab/error.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace gielab {

namespace {

double plogp(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Eigen::Matrix2d projector(double c, double s) {
  Eigen::Vector2d v(c, s);
  return v * v.transpose();
}

}  // namespace

void WernerParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, fmt::format("p = {} is outside [0, 1]", p));
  if (!(lambda >= 0.0 && lambda < 1.0)) throw Error(ErrorCode::InvalidArgument, fmt::format("lambda = {} is outside [0, 1)", lambda));
  if (cutoff < 1) throw Error(ErrorCode::InvalidArgument, fmt::format("cutoff = {} must be >= 1", cutoff));
}

double WernerParams::tail_mass() const {
  const double l2 = lambda * lambda;
  return p * (1 - l2) * std::pow(l2, cutoff + 1) / (1 - l2);
}

void QubitPovm::validate(double tol) const {
  if (elements.empty()) throw Error(ErrorCode::InvalidArgument, "POVM has no elements");
  Eigen::Matrix2d sum = Eigen::Matrix2d::Zero();
  for (const auto& e : elements) {
    if (std::abs(e(0, 1) - e(1, 0)) > tol) throw Error(ErrorCode::InvalidArgument, "POVM element is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol) throw Error(ErrorCode::InvalidArgument, "POVM element is not positive semidefinite");
    sum += e;
  }
  const double dev = (sum - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  if (dev > tol) throw Error(ErrorCode::InvalidArgument, fmt::format("POVM elements do not sum to identity (deviation {:.3g})", dev));
}

QubitPovm QubitPovm::computational() { return {{projector(1, 0), projector(0, 1)}}; }

QubitPovm QubitPovm::plus_minus() {
  const double h = std::numbers::sqrt2 / 2;
  return {{projector(h, h), projector(h, -h)}};
}

QubitPovm QubitPovm::identity() { return {{Eigen::Matrix2d::Identity()}}; }

QubitPovm QubitPovm::eigenbasis(const WernerParams& params) {
  const double p = params.p, l2 = params.lambda * params.lambda;
  Eigen::Matrix2d rho;
  const double c = std::sqrt(p * (1 - p) * (1 - l2));
  rho << p, c, c, 1 - p;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(rho);
  const auto& v = es.eigenvectors();
  return {{projector(v(0, 1), v(1, 1)), projector(v(0, 0), v(1, 0))}};
}

JointPmf::JointPmf(int cutoff, int n_outcomes)
    : cutoff_(cutoff), k_(n_outcomes), t_(static_cast<std::size_t>(cutoff + 1) * (cutoff + 1) * n_outcomes, 0.0) {}

double JointPmf::total() const {
  double s = 0;
  for (double v : t_) s += v;
  return s;
}

JointPmf joint_pmf(const WernerParams& params, const QubitPovm& povm) {
  params.validate();
  povm.validate();
  const double p = params.p, l2 = params.lambda * params.lambda;
  const double c = std::sqrt(p * (1 - p) * (1 - l2));
  const int K = static_cast<int>(povm.elements.size());
  JointPmf pmf(params.cutoff, K);
  for (int k = 0; k < K; ++k) {
    const auto& e = povm.elements[k];
    const double pe = p * e(0, 0) + c * (e(1, 0) + e(0, 1)) + (1 - p) * e(1, 1);
    pmf.at(0, 0, k) = pe - l2 * p * e(0, 0);
    double w = p * (1 - l2);
    for (int m = 1; m <= params.cutoff; ++m) {
      w *= l2;
      pmf.at(m, m, k) = w * e(0, 0);
    }
  }
  return pmf;
}

PmfEntropies pmf_entropies(const JointPmf& pmf) {
  const int n = pmf.cutoff() + 1, K = pmf.n_outcomes();
  std::vector<double> ae(static_cast<std::size_t>(n) * K, 0.0), be(static_cast<std::size_t>(n) * K, 0.0), e(K, 0.0),
      a(n, 0.0);
  PmfEntropies h;
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < K; ++k) {
        const double v = pmf.at(m, j, k);
        h.ABE -= plogp(v);
        ae[m * K + k] += v;
        be[j * K + k] += v;
        e[k] += v;
        a[m] += v;
      }
    }
  }
  for (double v : ae) h.AE -= plogp(v);
  for (double v : be) h.BE -= plogp(v);
  for (double v : e) h.E -= plogp(v);
  for (double v : a) h.A -= plogp(v);
  return h;
}

double conditional_mutual_info(const JointPmf& pmf) {
  const auto h = pmf_entropies(pmf);
  return h.AE + h.BE - h.ABE - h.E;
}

double photon_entropy_A(const WernerParams& params) {
  params.validate();
  const double p = params.p, l = params.lambda, l2 = l * l;
  if (p == 0.0 || l == 0.0) return 0.0;
  return -(std::log(1 - p * l2) + p * l2 * std::log(p * (1 - l2) / (1 - p * l2)) + 2 * p * l2 * std::log(l) / (1 - l2));
}

double eve_entropy(const WernerParams& params) {
  params.validate();
  const double d = std::sqrt(std::max(0.0, 1 - 4 * params.p * (1 - params.p) * params.lambda * params.lambda));
  return -plogp((1 + d) / 2) - plogp((1 - d) / 2);
}

double lower_bound(const WernerParams& params) { return photon_entropy_A(params) - eve_entropy(params); }

EveStrategy parse_strategy(std::string_view name) {
  if (name == "eigenbasis") return EveStrategy::Eigenbasis;
  if (name == "computational") return EveStrategy::Computational;
  if (name == "plus_minus") return EveStrategy::PlusMinus;
  if (name == "drop") return EveStrategy::Drop;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown Eve strategy '{}'", name));
}

std::string_view strategy_name(EveStrategy s) {
  switch (s) {
    case EveStrategy::Eigenbasis: return "eigenbasis";
    case EveStrategy::Computational: return "computational";
    case EveStrategy::PlusMinus: return "plus_minus";
    case EveStrategy::Drop: return "drop";
  }
  return "unknown";
}

QubitPovm strategy_povm(const WernerParams& params, EveStrategy s) {
  switch (s) {
    case EveStrategy::Eigenbasis: return QubitPovm::eigenbasis(params);
    case EveStrategy::Computational: return QubitPovm::computational();
    case EveStrategy::PlusMinus: return QubitPovm::plus_minus();
    case EveStrategy::Drop: return QubitPovm::identity();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Eve strategy");
}

double eve_strategy_cmi(const WernerParams& params, EveStrategy s) {
  return conditional_mutual_info(joint_pmf(params, strategy_povm(params, s)));
}

}  // namespace gielab
