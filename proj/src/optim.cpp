#include "gielab/optim.hpp"

#include "gielab/error.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <thread>

namespace gielab {

namespace {

constexpr double kPenalty = 1e10;

struct Context {
  const Objective* f;
  const Box* box;
  std::vector<double> scratch;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* ctx = static_cast<Context*>(params);
  for (std::size_t i = 0; i < ctx->scratch.size(); ++i) ctx->scratch[i] = gsl_vector_get(v, i);
  ctx->box->clamp(ctx->scratch);
  // Outside the box the clamped objective is flat; a quadratic excursion penalty
  // lets the simplex contract onto the boundary instead of drifting.
  double excursion = 0;
  for (std::size_t i = 0; i < ctx->scratch.size(); ++i) {
    const double d = gsl_vector_get(v, i) - ctx->scratch[i];
    excursion += d * d;
  }
  double val;
  try {
    val = (*ctx->f)(ctx->scratch);
  } catch (const Error&) {
    val = kPenalty;
  }
  return std::isfinite(val) ? std::min(val + excursion, kPenalty) : kPenalty;
}

void silence_gsl() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

void Box::clamp(std::span<double> x) const {
  for (std::size_t i = 0; i < x.size() && i < lo.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const Box& box,
                             const NelderMeadOptions& opt) {
  silence_gsl();
  const std::size_t n = x0.size();
  if (box.lo.size() != n || box.hi.size() != n) throw Error(ErrorCode::InvalidArgument, "nelder_mead: box dimension mismatch");
  box.clamp(x0);

  NelderMeadResult res;
  Context ctx{&f, &box, std::vector<double>(n)};
  if (n == 0) {
    res.value = f(ctx.scratch);
    res.converged = true;
    return res;
  }

  using VecPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;
  VecPtr x(gsl_vector_alloc(n), gsl_vector_free);
  VecPtr step(gsl_vector_alloc(n), gsl_vector_free);
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x.get(), i, x0[i]);
    double s = i < opt.step.size() ? opt.step[i] : 0.5;
    // Step inward when starting on an upper bound so the simplex is not flat.
    if (std::isfinite(box.hi[i]) && x0[i] + s > box.hi[i]) s = -s;
    gsl_vector_set(step.get(), i, s);
  }

  gsl_multimin_function fn{&trampoline, n, &ctx};
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> mm(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), gsl_multimin_fminimizer_free);
  if (gsl_multimin_fminimizer_set(mm.get(), &fn, x.get(), step.get()) != GSL_SUCCESS) {
    throw Error(ErrorCode::InvalidArgument, "nelder_mead: failed to initialise simplex");
  }

  const int window = opt.stall_window * static_cast<int>(n);
  std::vector<double> history;
  int it = 0;
  for (; it < opt.max_iters; ++it) {
    if (gsl_multimin_fminimizer_iterate(mm.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(mm.get()), opt.size_tol) == GSL_SUCCESS) {
      res.converged = true;
      ++it;
      break;
    }
    if (opt.value_tol > 0 && window > 0) {
      const double v = gsl_multimin_fminimizer_minimum(mm.get());
      history.push_back(v);
      if (static_cast<int>(history.size()) > window) {
        const double old = history[history.size() - 1 - window];
        if (old - v <= opt.value_tol * std::max(1.0, std::abs(v)) && v < kPenalty) {
          res.converged = true;
          res.stalled = true;
          ++it;
          break;
        }
      }
    }
  }
  res.iterations = it;
  res.size = gsl_multimin_fminimizer_size(mm.get());
  res.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.x[i] = gsl_vector_get(mm->x, i);
  box.clamp(res.x);
  res.value = gsl_multimin_fminimizer_minimum(mm.get());
  // The best vertex may sit slightly outside the box; report the clamped point's value.
  if (res.value < kPenalty) {
    gsl_vector_view xv = gsl_vector_view_array(res.x.data(), n);
    res.value = trampoline(&xv.vector, &ctx);
  }
  return res;
}

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("GIE_LAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n <= 1) return {0.5 * (lo + hi)};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace gielab
