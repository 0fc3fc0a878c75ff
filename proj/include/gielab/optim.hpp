#pragma once

// Derivative-free minimization (GSL nmsimplex2 underneath) with box clamping,
// plus a small deterministic parallel-for.

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace gielab {

using Objective = std::function<double(std::span<const double>)>;

/// Per-coordinate bounds; use +-infinity for unbounded (e.g. periodic angles).
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box unbounded(std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    return {std::vector<double>(n, -inf), std::vector<double>(n, inf)};
  }
  void clamp(std::span<double> x) const;
};

struct NelderMeadOptions {
  int max_iters = 1000;
  double size_tol = 1e-8;    // simplex characteristic size
  // Also converged when the best value improved by less than value_tol (relative to
  // max(1, |f|)) over the last stall_window * n iterations; <= 0 disables.
  double value_tol = 1e-13;
  int stall_window = 30;
  std::vector<double> step;  // initial step per coordinate; default 0.5
};

struct NelderMeadResult {
  std::vector<double> x;  // already clamped into the box
  double value = 0;
  int iterations = 0;
  bool converged = false;
  bool stalled = false;  // converged by the value criterion rather than by size
  double size = 0;  // final simplex characteristic size
};

/// Minimizes f(clamp(x)). Non-finite objective values are replaced by a large
/// penalty so the simplex can move away from them.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const Box& box,
                             const NelderMeadOptions& opt = {});

/// Number of worker threads: hardware concurrency capped by GIE_LAB_THREADS.
int worker_count();

/// Runs body(i) for i in [0, n). Each index must write only its own output slot,
/// which keeps results independent of scheduling.
void parallel_for(int n, const std::function<void(int)>& body);

/// n evenly spaced values from lo to hi inclusive (n == 1 gives the midpoint).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace gielab
