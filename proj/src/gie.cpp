#include "gielab/gie.hpp"

#include "gielab/error.hpp"
#include "gielab/kernels/mi_batch.hpp"
#include "gielab/mutual_info.hpp"
#include "gielab/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace gielab {

namespace {

using Mat4 = Eigen::Matrix4d;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

Mat2 seed_matrix(double phi, double log_vx, double log_vp) {
  const Mat2 u = rotation(phi);
  return u * Eigen::Vector2d(std::exp(log_vx), std::exp(log_vp)).asDiagonal() * u.transpose();
}

// f of a 4x4 CCM through the scalar reference kernel (Gamma_A = Gamma_B = 0).
double mi4(const Mat4& sigma) {
  static constexpr double zero[1] = {0.0};
  const kernels::Sym2Soa z{zero, zero, zero};
  double out;
  kernels::scalar::mi_batch_ab(sigma.data(), z, z, 1, &out);
  return out;
}

Mat4 embed(const Mat2& a, const Mat2& b) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<2, 2>() = a;
  m.bottomRightCorner<2, 2>() = b;
  return m;
}

bool nearly_same(const Mat2& a, const Mat2& b) {
  for (int i = 0; i < 4; ++i) {
    const double x = a.data()[i], y = b.data()[i];
    if (std::abs(x - y) > 1e-9 * std::max({1.0, std::abs(x), std::abs(y)})) return false;
  }
  return true;
}

// ------------------------------------------------------------------ candidates

struct ModeGrid {
  std::vector<MeasurementParam> params;
  std::vector<Mat2> mats;
};

/// (phi, log V_x, log V_p) grid: grid_points - 1 angles in [0, pi) so that pi/2 is
/// hit for odd grid_points, and grid_points log-variances spanning the clamp box.
/// Duplicates after the physicality projection are removed.
ModeGrid mode_grid(const GieConfig& cfg) {
  const int n = std::max(2, cfg.grid_points);
  const int n_phi = std::max(1, n - 1);
  const auto logs = linspace(-2 * cfg.t_max, 2 * cfg.t_max, n);
  ModeGrid g;
  for (int k = 0; k < n_phi; ++k) {
    const double phi = kPi * k / n_phi;
    for (double lx : logs) {
      for (double lp : logs) {
        const auto p = MeasurementParam::from_raw(phi, lx, lp, cfg.t_max);
        const Mat2 m = seed_matrix(p.phi, p.log_vx, p.log_vp);
        const bool dup = std::any_of(g.mats.begin(), g.mats.end(), [&](const Mat2& o) { return nearly_same(o, m); });
        if (!dup) {
          g.params.push_back(p);
          g.mats.push_back(m);
        }
      }
    }
  }
  return g;
}

Box mode_box(double t_max, int n_modes) {
  Box b = Box::unbounded(3 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    for (int c = 1; c < 3; ++c) {
      b.lo[3 * j + c] = -2 * t_max;
      b.hi[3 * j + c] = 2 * t_max;
    }
  }
  return b;
}

// Two-mode Eve CMs S diag(nu) S^T keep their eigenvalues within [e^{-t_max}, e^{2 t_max}].
// Squeezing and noise at full single-mode range together give entries near e^{4 t_max},
// where the Schur complement has no correct digits left.
Box eve_box(int R, double t_max) {
  if (R == 1) return mode_box(t_max, 1);
  Box b = Box::unbounded(12);
  for (int i : {4, 5}) {
    b.lo[i] = -0.5 * t_max;
    b.hi[i] = 0.5 * t_max;
  }
  for (int i : {10, 11}) {
    b.lo[i] = 0.0;
    b.hi[i] = t_max;
  }
  return b;
}

struct Problem {
  Purification pi;
  int R = 0;
  Mat4 gab;
  Mat beta;  // 4 x 2R
  // row-major copies for the batched kernels
  double beta_rm[8] = {};
  double nu = 1.0;

  explicit Problem(Purification p) : pi(std::move(p)), R(pi.n_E) {
    gab = pi.gamma_AB;
    beta = pi.gamma_ABE;
    if (R == 1) {
      for (int r = 0; r < 4; ++r) {
        beta_rm[2 * r] = beta(r, 0);
        beta_rm[2 * r + 1] = beta(r, 1);
      }
      nu = pi.gamma_E(0, 0);
    }
  }

  Mat4 conditional(const Mat& ge) const {
    if (R == 0) return gab;
    const Mat n = pi.gamma_E + ge;
    Mat4 c = gab - beta * n.ldlt().solve(beta.transpose());
    return 0.5 * (c + c.transpose());
  }

  double f(const Mat2& ga, const Mat2& gb, const Mat& ge) const {
    if (R == 1) {
      Mat4 alpha = gab + embed(ga, gb);
      const double xx = ge(0, 0), xp = ge(0, 1), pp = ge(1, 1);
      double out;
      kernels::scalar::mi_batch_e1(alpha.data(), beta_rm, nu, {&xx, &xp, &pp}, 1, &out);
      return out;
    }
    return mi4(conditional(ge) + embed(ga, gb));
  }
};

struct EveSpace {
  int R = 0;
  double t_max = 10;
  Box box;
  std::vector<EveParam> cands;
  std::vector<Mat> mats;
  std::vector<Mat4> cond;  // conditional CM of AB per candidate
  std::vector<double> xx, xp, pp;  // R = 1 candidates as structure-of-arrays
};

EveParam eve_product(double phi1, double r1, double lnu1, double phi2, double r2, double lnu2, double theta = 0.0) {
  EveParam e;
  e.n_modes = 2;
  e.raw = {phi1, phi2, theta, 0.0, r1, r2, 0.0, 0.0, 0.0, 0.0, lnu1, lnu2};
  return e;
}

EveSpace eve_space(const Problem& prob, const ModeGrid& grid, const GieConfig& cfg) {
  EveSpace s;
  s.R = prob.R;
  s.t_max = cfg.t_max;
  if (s.R == 0) return s;
  s.box = eve_box(s.R, cfg.t_max);
  const double t = cfg.t_max;
  if (s.R == 1) {
    for (const auto& p : grid.params) s.cands.push_back({1, {p.phi, p.log_vx, p.log_vp}});
  } else {
    // Product measurements built from homodyne, heterodyne, partial squeezing and
    // discarding on each mode, a few 50:50-mixed homodynes, and seeded random points.
    struct Single {
      double phi, r, lnu;
    };
    std::vector<Single> singles;
    for (int k = 0; k < 4; ++k) singles.push_back({kPi * k / 4, 0.5 * t, 0.0});
    singles.push_back({0.0, 0.0, 0.0});
    singles.push_back({0.0, 0.0, t});
    singles.push_back({0.0, 0.25 * t, 0.0});
    singles.push_back({kPi / 2, 0.25 * t, 0.0});
    for (const auto& a : singles) {
      for (const auto& b : singles) s.cands.push_back(eve_product(a.phi, a.r, a.lnu, b.phi, b.r, b.lnu));
    }
    for (double theta : {kPi / 4, -kPi / 4}) {
      for (double p1 : {0.0, kPi / 2}) {
        for (double p2 : {0.0, kPi / 2}) s.cands.push_back(eve_product(p1, 0.5 * t, 0.0, p2, 0.5 * t, 0.0, theta));
      }
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ang(0.0, kPi), sq(-0.5 * t, 0.5 * t), ln(0.0, t);
    for (int i = 0; i < cfg.eve_random; ++i) {
      EveParam e;
      e.n_modes = 2;
      e.raw.resize(12);
      for (int k = 0; k < 10; ++k) e.raw[k] = (k == 4 || k == 5) ? sq(rng) : ang(rng);
      e.raw[10] = ln(rng);
      e.raw[11] = ln(rng);
      s.cands.push_back(e);
    }
  }
  for (const auto& c : s.cands) {
    s.mats.push_back(c.matrix(t));
    s.cond.push_back(prob.conditional(s.mats.back()));
    if (s.R == 1) {
      s.xx.push_back(s.mats.back()(0, 0));
      s.xp.push_back(s.mats.back()(0, 1));
      s.pp.push_back(s.mats.back()(1, 1));
    }
  }
  return s;
}

std::vector<double> eve_steps(int R) {
  if (R == 1) return {0.4, 4.0, 4.0};
  return {0.4, 0.4, 0.4, 0.4, 2.0, 2.0, 0.4, 0.4, 0.4, 0.4, 4.0, 4.0};
}

/// Indices of the `k` best entries (smallest if `minimize`), ties broken by index.
std::vector<int> best_indices(const std::vector<double>& v, int k, bool minimize) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](int i) {
    const double x = v[i];
    if (std::isnan(x)) return kInf;
    return minimize ? x : -x;
  };
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key(a) < key(b); });
  idx.resize(std::min<std::size_t>(idx.size(), static_cast<std::size_t>(std::max(k, 1))));
  return idx;
}

struct Counter {
  long long evals = 0;
};

/// Simplex refinement of Eve's parameters from the `starts` best screened candidates.
EveResult minimize_eve(const EveSpace& space, const std::vector<double>& screen,
                       const std::function<double(const Mat&)>& f_of_gamma_e, const GieConfig& cfg, int starts,
                       int iters, Counter& count) {
  EveResult best;
  best.value = kInf;
  const auto order = best_indices(screen, starts, true);
  for (int idx : order) {
    if (!std::isnan(screen[idx]) && screen[idx] < best.value) {
      best.value = screen[idx];
      best.param = space.cands[idx];
      best.converged = false;
    }
  }
  NelderMeadOptions opt;
  opt.max_iters = iters;
  opt.size_tol = cfg.tol;
  opt.step = eve_steps(space.R);
  bool any_converged = false;
  for (int idx : order) {
    auto obj = [&](std::span<const double> x) {
      ++count.evals;
      EveParam e{space.R, {x.begin(), x.end()}};
      const double v = f_of_gamma_e(e.matrix(space.t_max));
      return std::isnan(v) ? kInf : v;
    };
    const auto res = nelder_mead(obj, space.cands[idx].raw, space.box, opt);
    best.iterations += res.iterations;
    any_converged = any_converged || res.converged;
    if (res.value <= best.value) {
      best.value = res.value;
      best.param = {space.R, res.x};
      best.converged = res.converged;
      best.size = res.size;
    }
  }
  best.converged = best.converged || any_converged;
  best.boundary_hit = best.param.at_boundary(space.t_max);
  return best;
}

/// inf over Eve for finite single-mode Alice/Bob seeds (fast path).
EveResult eve_inf_fast(const Problem& prob, const EveSpace& space, const Mat2& ga, const Mat2& gb,
                       const GieConfig& cfg, int starts, int iters, Counter& count) {
  if (prob.R == 0) {
    ++count.evals;
    EveResult r;
    r.value = mi4(prob.gab + embed(ga, gb));
    return r;
  }
  const std::size_t n = space.cands.size();
  std::vector<double> screen(n);
  if (prob.R == 1) {
    Mat4 alpha = prob.gab + embed(ga, gb);
    kernels::mi_batch_e1(alpha.data(), prob.beta_rm, prob.nu, {space.xx.data(), space.xp.data(), space.pp.data()}, n,
                         screen.data());
  } else {
    const Mat4 m = embed(ga, gb);
    for (std::size_t e = 0; e < n; ++e) screen[e] = mi4(space.cond[e] + m);
  }
  count.evals += static_cast<long long>(n);
  return minimize_eve(space, screen, [&](const Mat& ge) { return prob.f(ga, gb, ge); }, cfg, starts, iters, count);
}

struct PairGrid {
  std::vector<double> a_xx, a_xp, a_pp, b_xx, b_xp, b_pp;
  std::vector<int> ia, ib;
};

PairGrid pair_grid(const ModeGrid& g) {
  PairGrid p;
  const int m = static_cast<int>(g.mats.size());
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      p.a_xx.push_back(g.mats[i](0, 0));
      p.a_xp.push_back(g.mats[i](0, 1));
      p.a_pp.push_back(g.mats[i](1, 1));
      p.b_xx.push_back(g.mats[j](0, 0));
      p.b_xp.push_back(g.mats[j](0, 1));
      p.b_pp.push_back(g.mats[j](1, 1));
      p.ia.push_back(i);
      p.ib.push_back(j);
    }
  }
  return p;
}

void batch_ab(const Mat4& gamma_c, const PairGrid& p, double* out) {
  kernels::mi_batch_ab(gamma_c.data(), {p.a_xx.data(), p.a_xp.data(), p.a_pp.data()},
                       {p.b_xx.data(), p.b_xp.data(), p.b_pp.data()}, p.ia.size(), out);
}

std::vector<double> ab_raw(const MeasurementParam& a, const MeasurementParam& b) {
  return {a.phi, a.log_vx, a.log_vp, b.phi, b.log_vx, b.log_vp};
}

struct AbPoint {
  MeasurementParam a, b;
  Mat2 ga, gb;
};

AbPoint ab_from_raw(std::span<const double> x, double t_max) {
  AbPoint p;
  p.a = MeasurementParam::from_raw(x[0], x[1], x[2], t_max);
  p.b = MeasurementParam::from_raw(x[3], x[4], x[5], t_max);
  p.ga = seed_matrix(p.a.phi, p.a.log_vx, p.a.log_vp);
  p.gb = seed_matrix(p.b.phi, p.b.log_vx, p.b.log_vp);
  return p;
}

const std::vector<double> kAbSteps = {0.4, 4.0, 4.0, 0.4, 4.0, 4.0};

/// sup over Alice/Bob seeds of f for a fixed conditional CM: grid through the batched
/// kernel, then simplex refinement from the best `starts` grid pairs.
struct AbSup {
  double value = -kInf;
  MeasurementParam a, b;
  bool converged = false;
  double size = 0;
  int iterations = 0;
};

AbSup sup_over_ab(const Mat4& gamma_c, const ModeGrid& grid, const PairGrid& pairs, const GieConfig& cfg,
                  int starts, int iters, Counter& count) {
  std::vector<double> vals(pairs.ia.size());
  batch_ab(gamma_c, pairs, vals.data());
  count.evals += static_cast<long long>(vals.size());
  AbSup best;
  const auto order = best_indices(vals, starts, false);
  NelderMeadOptions opt;
  opt.max_iters = iters;
  opt.size_tol = cfg.tol;
  opt.step = kAbSteps;
  const Box box = mode_box(cfg.t_max, 2);
  for (int idx : order) {
    auto obj = [&](std::span<const double> x) {
      ++count.evals;
      const auto p = ab_from_raw(x, cfg.t_max);
      const double v = mi4(gamma_c + embed(p.ga, p.gb));
      return std::isnan(v) ? kInf : -v;
    };
    const auto res = nelder_mead(obj, ab_raw(grid.params[pairs.ia[idx]], grid.params[pairs.ib[idx]]), box, opt);
    best.iterations += res.iterations;
    double v = -res.value;
    if (!std::isnan(vals[idx]) && vals[idx] > v) v = vals[idx];
    if (v > best.value) {
      best.value = v;
      const auto p = ab_from_raw(res.x, cfg.t_max);
      best.a = p.a;
      best.b = p.b;
      best.converged = res.converged;
    }
  }
  return best;
}

void require_two_mode(const CovarianceMatrix& gamma_ab) {
  if (gamma_ab.n_modes() != 2) throw Error(ErrorCode::InvalidCM, "GIE is implemented for one mode per party");
  if (!gamma_ab.is_physical()) throw Error(ErrorCode::InvalidCM, "input CM is not physical");
}

void validate(const GieConfig& cfg) {
  if (cfg.grid_points < 2 || cfg.refine_iters < 1 || !(cfg.tol > 0) || !(cfg.t_max > 0) || cfg.top_k < 1) {
    throw Error(ErrorCode::InvalidArgument, "invalid optimizer configuration");
  }
}

}  // namespace

// ------------------------------------------------------------------ parameters

MeasurementParam MeasurementParam::from_raw(double phi, double log_vx, double log_vp, double t_max) {
  MeasurementParam p;
  const double lim = 2 * t_max;
  p.phi = std::fmod(phi, kPi);
  if (p.phi < 0) p.phi += kPi;
  p.log_vx = std::clamp(log_vx, -lim, lim);
  p.log_vp = std::clamp(log_vp, -lim, lim);
  // Reflect across log_vx + log_vp = 0 so that V_x V_p >= 1 without a flat direction.
  if (p.log_vx + p.log_vp < 0) p = {false, p.phi, -p.log_vp, -p.log_vx};
  return p;
}

ModeMeasurement MeasurementParam::mode() const {
  return homodyne ? ModeMeasurement::homodyne(phi) : ModeMeasurement::gaussian(phi, log_vx, log_vp);
}

bool MeasurementParam::at_boundary(double t_max) const {
  if (homodyne) return false;
  const double lim = 2 * t_max * (1 - 1e-6);
  return std::abs(log_vx) >= lim || std::abs(log_vp) >= lim;
}

int EveParam::raw_size(int n_modes) {
  switch (n_modes) {
    case 0: return 0;
    case 1: return 3;
    case 2: return 12;
    default: throw Error(ErrorCode::InvalidArgument, "Eve measurements are parameterized for at most two modes");
  }
}

Mat EveParam::matrix(double t_max) const {
  if (static_cast<int>(raw.size()) != raw_size(n_modes)) throw Error(ErrorCode::InvalidArgument, "EveParam: wrong size");
  if (n_modes == 0) return Mat(0, 0);
  std::vector<double> x = raw;
  eve_box(n_modes, t_max).clamp(x);
  if (n_modes == 1) {
    const auto p = MeasurementParam::from_raw(x[0], x[1], x[2], t_max);
    return seed_matrix(p.phi, p.log_vx, p.log_vp);
  }
  const auto s = build_symplectic(unpack_symplectic_params(2, std::span(x).first(10)));
  const Vec d = (Vec(4) << std::exp(x[10]), std::exp(x[10]), std::exp(x[11]), std::exp(x[11])).finished();
  Mat g = s.matrix() * d.asDiagonal() * s.matrix().transpose();
  return 0.5 * (g + g.transpose());
}

MeasurementCM EveParam::measurement(double t_max) const {
  if (n_modes == 0) return MeasurementCM::product({});
  return MeasurementCM::finite(matrix(t_max));
}

bool EveParam::at_boundary(double t_max) const {
  if (n_modes == 1) return MeasurementParam::from_raw(raw[0], raw[1], raw[2], t_max).at_boundary(t_max);
  if (n_modes == 2) {
    const double tol = 1e-6 * t_max;
    return std::abs(raw[4]) >= 0.5 * t_max - tol || std::abs(raw[5]) >= 0.5 * t_max - tol ||
           raw[10] >= t_max - tol || raw[11] >= t_max - tol;
  }
  return false;
}

// ------------------------------------------------------------------ inf over Eve

EveResult inf_over_eve(const Purification& pi, const MeasurementCM& gamma_A, const MeasurementCM& gamma_B,
                       const GieConfig& cfg) {
  validate(cfg);
  if (pi.n_E > 2) throw Error(ErrorCode::InvalidArgument, "inf_over_eve supports at most two purifying modes");
  if (pi.n_A != 1 || pi.n_B != 1) throw Error(ErrorCode::InvalidArgument, "inf_over_eve expects one mode per party");
  if (pi.n_E == 0) {
    EveResult r;
    r.value = mutual_info_f(pi, gamma_A, gamma_B, MeasurementCM::product({}));
    r.param.n_modes = 0;
    return r;
  }
  const Problem prob(pi);
  const ModeGrid grid = mode_grid(cfg);
  const EveSpace space = eve_space(prob, grid, cfg);
  auto f_of = [&](const Mat& ge) {
    try {
      return mutual_info_conditional(prob.conditional(ge), 1, gamma_A, gamma_B);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateDistribution) return std::numeric_limits<double>::quiet_NaN();
      throw;
    }
  };
  std::vector<double> screen(space.cands.size());
  for (std::size_t e = 0; e < screen.size(); ++e) screen[e] = f_of(space.mats[e]);
  Counter count;
  auto res = minimize_eve(space, screen, f_of, cfg, 3, cfg.refine_iters, count);
  res.size = 0;
  return res;
}

// ------------------------------------------------------------------ GIE

GieResult gie(const CovarianceMatrix& gamma_ab, const GieConfig& cfg) {
  validate(cfg);
  require_two_mode(gamma_ab);
  GieResult out;
  if (ppt_separable(gamma_ab)) {
    out.reason = "ppt-separable";
    return out;
  }
  // Local symplectics leave f's optimum unchanged; work in the standard form.
  const StandardForm sf = standard_form(gamma_ab);
  const Problem prob(minimal_purification(sf.matrix()));
  if (prob.R > 2) throw Error(ErrorCode::InvalidArgument, "at most two purifying modes are supported");
  out.reason = "optimized";
  out.n_purifying = prob.R;

  const ModeGrid grid = mode_grid(cfg);
  const PairGrid pairs = pair_grid(grid);
  const EveSpace space = eve_space(prob, grid, cfg);
  Counter screen_count;

  // Screening: each (A, B) pair scored by its minimum over Eve's candidates.
  std::vector<double> screen(pairs.ia.size(), kInf);
  if (prob.R == 0) {
    batch_ab(prob.gab, pairs, screen.data());
  } else {
    std::vector<double> tmp(pairs.ia.size());
    for (const auto& c : space.cond) {
      batch_ab(c, pairs, tmp.data());
      for (std::size_t i = 0; i < tmp.size(); ++i) {
        if (!std::isnan(tmp[i])) screen[i] = std::min(screen[i], tmp[i]);
      }
    }
    for (double& v : screen) {
      if (v == kInf) v = std::numeric_limits<double>::quiet_NaN();
    }
  }
  screen_count.evals = static_cast<long long>(pairs.ia.size() * std::max<std::size_t>(1, space.cond.size()));

  const auto starts = best_indices(screen, cfg.top_k, false);
  struct Run {
    NelderMeadResult nm;
    Counter count;
  };
  std::vector<Run> runs(starts.size());
  const int inner_iters = std::max(50, cfg.refine_iters / 2);
  const Box box = mode_box(cfg.t_max, 2);
  parallel_for(static_cast<int>(starts.size()), [&](int s) {
    Run& run = runs[s];
    auto obj = [&](std::span<const double> x) {
      const auto p = ab_from_raw(x, cfg.t_max);
      const double v = eve_inf_fast(prob, space, p.ga, p.gb, cfg, 1, inner_iters, run.count).value;
      return std::isnan(v) ? kInf : -v;
    };
    NelderMeadOptions opt;
    opt.max_iters = cfg.refine_iters;
    opt.size_tol = cfg.tol;
    opt.step = kAbSteps;
    const int idx = starts[s];
    run.nm = nelder_mead(obj, ab_raw(grid.params[pairs.ia[idx]], grid.params[pairs.ib[idx]]), box, opt);
  });

  int best = 0;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    out.iterations += runs[s].nm.iterations;
    out.evaluations += runs[s].count.evals;
    if (runs[s].nm.value < runs[best].nm.value) best = static_cast<int>(s);
  }
  out.evaluations += screen_count.evals;

  // Final, more thorough inner search at the chosen Alice/Bob measurements.
  const auto p = ab_from_raw(runs[best].nm.x, cfg.t_max);
  Counter final_count;
  const EveResult eve = eve_inf_fast(prob, space, p.ga, p.gb, cfg, 3, cfg.refine_iters, final_count);
  out.evaluations += final_count.evals;

  out.value = std::max(0.0, eve.value);
  out.gamma_A_opt = p.a;
  out.gamma_B_opt = p.b;
  out.gamma_E_opt = eve.param;
  out.gamma_E_opt.n_modes = prob.R;
  out.converged = runs[best].nm.converged && eve.converged;
  out.inner_size = eve.size;
  out.outer_size = runs[best].nm.size;
  out.boundary_hit_A = p.a.at_boundary(cfg.t_max);
  out.boundary_hit_B = p.b.at_boundary(cfg.t_max);
  out.boundary_hit_E = eve.boundary_hit;
  return out;
}

// ------------------------------------------------------------------ upper bound

GieResult upper_bound_U(const CovarianceMatrix& gamma_ab, const GieConfig& cfg) {
  validate(cfg);
  require_two_mode(gamma_ab);
  GieResult out;
  if (ppt_separable(gamma_ab)) {
    out.reason = "ppt-separable";
    return out;
  }
  const StandardForm sf = standard_form(gamma_ab);
  const Problem prob(minimal_purification(sf.matrix()));
  if (prob.R > 2) throw Error(ErrorCode::InvalidArgument, "at most two purifying modes are supported");
  out.reason = "optimized";
  out.n_purifying = prob.R;

  const ModeGrid grid = mode_grid(cfg);
  const PairGrid pairs = pair_grid(grid);
  const int inner_iters = std::max(50, cfg.refine_iters / 2);

  if (prob.R == 0) {
    Counter count;
    const AbSup s = sup_over_ab(prob.gab, grid, pairs, cfg, 3, cfg.refine_iters, count);
    out.value = std::max(0.0, s.value);
    out.gamma_A_opt = s.a;
    out.gamma_B_opt = s.b;
    out.iterations = s.iterations;
    out.evaluations = count.evals;
    out.converged = s.converged;
    out.boundary_hit_A = s.a.at_boundary(cfg.t_max);
    out.boundary_hit_B = s.b.at_boundary(cfg.t_max);
    return out;
  }

  const EveSpace space = eve_space(prob, grid, cfg);
  std::vector<double> screen(space.cands.size());
  std::vector<double> tmp(pairs.ia.size());
  for (std::size_t e = 0; e < space.cands.size(); ++e) {
    batch_ab(space.cond[e], pairs, tmp.data());
    double m = -kInf;
    for (double v : tmp) {
      if (!std::isnan(v)) m = std::max(m, v);
    }
    screen[e] = m;
  }
  out.evaluations = static_cast<long long>(space.cands.size() * pairs.ia.size());

  const auto starts = best_indices(screen, cfg.top_k, true);
  struct Run {
    NelderMeadResult nm;
    Counter count;
  };
  std::vector<Run> runs(starts.size());
  parallel_for(static_cast<int>(starts.size()), [&](int s) {
    Run& run = runs[s];
    auto obj = [&](std::span<const double> x) {
      EveParam e{prob.R, {x.begin(), x.end()}};
      return sup_over_ab(prob.conditional(e.matrix(cfg.t_max)), grid, pairs, cfg, 1, inner_iters, run.count).value;
    };
    NelderMeadOptions opt;
    opt.max_iters = cfg.refine_iters;
    opt.size_tol = cfg.tol;
    opt.step = eve_steps(prob.R);
    run.nm = nelder_mead(obj, space.cands[starts[s]].raw, space.box, opt);
  });

  int best = 0;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    out.iterations += runs[s].nm.iterations;
    out.evaluations += runs[s].count.evals;
    if (runs[s].nm.value < runs[best].nm.value) best = static_cast<int>(s);
  }
  EveParam e{prob.R, runs[best].nm.x};
  Counter final_count;
  const AbSup s = sup_over_ab(prob.conditional(e.matrix(cfg.t_max)), grid, pairs, cfg, 3, cfg.refine_iters, final_count);
  out.evaluations += final_count.evals;
  out.value = std::max(0.0, s.value);
  out.gamma_A_opt = s.a;
  out.gamma_B_opt = s.b;
  out.gamma_E_opt = e;
  out.converged = runs[best].nm.converged && s.converged;
  out.outer_size = runs[best].nm.size;
  out.boundary_hit_A = s.a.at_boundary(cfg.t_max);
  out.boundary_hit_B = s.b.at_boundary(cfg.t_max);
  out.boundary_hit_E = e.at_boundary(cfg.t_max);
  return out;
}

}  // namespace gielab
