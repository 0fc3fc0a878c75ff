#include "verify.hpp"

#include "random_states.hpp"

#include "gielab/error.hpp"
#include "gielab/mutual_info.hpp"
#include "gielab/transforms.hpp"

#include <fmt/format.h>

#include <cmath>

namespace gielab::tools {

namespace {

void record(SuiteReport& r, double residual) {
  ++r.instances;
  r.max_residual = std::max(r.max_residual, std::isfinite(residual) ? residual : 1e300);
}

SuiteReport core(const GieConfig& cfg) {
  SuiteReport r{"core", true, 0, 0, 1e-8, "Williamson, standard form and f invariants on random CMs"};
  Rng rng(cfg.seed);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_mixed_cm(rng, 2, 1.0, 3.0, 0.8);
    const double scale = g.matrix().cwiseAbs().maxCoeff();
    const auto w = williamson(g);
    Mat d = w.S.congruence(g.matrix());
    for (int k = 0; k < 2; ++k) d(2 * k, 2 * k) -= w.nu[k], d(2 * k + 1, 2 * k + 1) -= w.nu[k];
    record(r, d.cwiseAbs().maxCoeff() / scale);
    record(r, w.S.symplectic_residual());

    const auto sf = standard_form(g);
    const Mat back = sf.local_symplectic().congruence(g.matrix()) - sf.matrix().matrix();
    record(r, back.cwiseAbs().maxCoeff() / scale);
    record(r, std::abs(g.matrix().determinant() - sf.matrix().matrix().determinant()) / g.matrix().determinant());

    const auto pi = minimal_purification(g);
    const auto ga = MeasurementCM::heterodyne(1);
    const double f = mutual_info_f(pi, ga, ga, MeasurementCM::heterodyne(pi.n_E));
    record(r, std::max(0.0, -f));
    const Mat s = outcome_ccm(pi, ga, ga, MeasurementCM::heterodyne(pi.n_E));
    const Mat sig = s.topLeftCorner(4, 4) -
                    s.topRightCorner(4, 2 * pi.n_E) * s.bottomRightCorner(2 * pi.n_E, 2 * pi.n_E).inverse() *
                        s.bottomLeftCorner(2 * pi.n_E, 4);
    record(r, std::abs(gaussian_mutual_information(sig, 2) - gaussian_mutual_information(3.7 * sig, 2)));
  }
  r.passed = r.max_residual < r.threshold;
  return r;
}

SuiteReport channel(const GieConfig& cfg) {
  SuiteReport r{"channel", true, 0, 0, 1e-6, "channel-processed vs absorbed Eve measurement, x = 1e8"};
  Rng rng(cfg.seed + 1);
  for (int i = 0; i < 100; ++i) {
    const auto ghz = ghz_cm(uniform(rng, 0.1, 1.0));
    Purification pi;
    pi.n_E = 1;
    pi.gamma_AB = ghz.full.matrix().topLeftCorner(4, 4);
    pi.gamma_ABE = ghz.full.matrix().topRightCorner(4, 2);
    pi.gamma_E = ghz.full.matrix().bottomRightCorner(2, 2);
    const int L = 1 + static_cast<int>(rng() % 3);
    ChannelSpec ch;
    ch.X = Mat(L, 2);
    for (int a = 0; a < L; ++a) ch.X(a, 0) = uniform(rng, -1, 1), ch.X(a, 1) = uniform(rng, -1, 1);
    ch.Y = random_psd(rng, L, L, 0.5);
    const Mat ge = random_mixed_cm(rng, 1, 1.0, 2.0, 0.7).matrix();
    const Mat gab = direct_sum(random_mixed_cm(rng, 1, 1.0, 2.0, 0.5).matrix(), random_mixed_cm(rng, 1, 1.0, 2.0, 0.5).matrix());
    const Mat lhs = channel_sigma_ab(pi, gab, ge, ch);
    const Mat rhs = sigma_ab(pi, gab, integrate_channel(pi, ge, ch, 1e8));
    record(r, (lhs - rhs).norm());
  }
  r.passed = r.max_residual < r.threshold;
  return r;
}

SuiteReport purification(const GieConfig& cfg) {
  SuiteReport r{"purification", true, 0, 0, 1e-8, "non-minimal purification mapped onto the minimal one"};
  Rng rng(cfg.seed + 2);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_mixed_cm(rng, 2, 1.1, 2.5, 0.5);
    const auto pi = minimal_purification(g);
    const int K = pi.n_E + 2;
    // Append vacuum ancillas to E, then scramble E with a random Eve-local symplectic.
    Mat full = direct_sum(pi.full(), Mat::Identity(4, 4));
    Mat s = Mat::Identity(4 + 2 * K, 4 + 2 * K);
    s.bottomRightCorner(2 * K, 2 * K) = random_symplectic(rng, K, 0.5);
    full = s * full * s.transpose();
    Purification big;
    big.n_E = K;
    big.gamma_AB = full.topLeftCorner(4, 4);
    big.gamma_ABE = full.topRightCorner(4, 2 * K);
    big.gamma_E = full.bottomRightCorner(2 * K, 2 * K);
    const Mat gbar = random_mixed_cm(rng, K, 1.0, 2.0, 0.5).matrix();
    const auto mapped = reduce_purification_measurement(pi, big, gbar);
    const Mat zero = Mat::Zero(4, 4);
    record(r, (sigma_ab(big, zero, gbar) - sigma_ab(pi, zero, mapped.matrix())).cwiseAbs().maxCoeff());
  }
  r.passed = r.max_residual < r.threshold;
  return r;
}

SuiteReport separable(const GieConfig& cfg) {
  SuiteReport r{"separable", true, 0, 0, 1e-3, "product-projecting measurement at s = 10, x-homodyne on A and B"};
  Rng rng(cfg.seed + 3);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_separable_cm(rng);
    const auto dec = find_separable_decomposition(g);
    if (!dec) {
      record(r, INFINITY);
      continue;
    }
    const auto pi = minimal_purification(g);
    const auto ge = product_projecting_measurement(*dec, pi, 10.0);
    const auto hx = MeasurementCM::single(ModeMeasurement::homodyne(0.0));
    record(r, mutual_info_f(pi, hx, hx, ge));
    const auto res = gie(g, cfg);
    if (res.reason != "ppt-separable" || res.value != 0.0) record(r, INFINITY);
  }
  r.passed = r.max_residual < r.threshold;
  return r;
}

SuiteReport monotonic(const GieConfig& cfg) {
  SuiteReport r{"monotonic", true, 0, 0, 2e-3, "largest GIE increase along pure loss 1.0 > 0.8 > ... > 0.2 on the GHZ reduction, r = 0.5"};
  const auto g = ghz_cm(0.5).reduced;
  double prev = 0;
  bool first = true;
  for (double eta : {1.0, 0.8, 0.6, 0.4, 0.2}) {
    const double v = gie(apply_local_channel(g, LocalChannel::lossy(eta, eta)), cfg).value;
    record(r, first ? 0.0 : std::max(0.0, v - prev));
    prev = v;
    first = false;
  }
  r.passed = r.max_residual <= r.threshold;
  return r;
}

}  // namespace

std::vector<std::string> suite_names() { return {"core", "channel", "purification", "separable", "monotonic"}; }

SuiteReport run_suite(const std::string& name, const GieConfig& cfg) {
  try {
    if (name == "core") return core(cfg);
    if (name == "channel") return channel(cfg);
    if (name == "purification") return purification(cfg);
    if (name == "separable") return separable(cfg);
    if (name == "monotonic") return monotonic(cfg);
  } catch (const Error& e) {
    return {name, false, 0, INFINITY, 0, fmt::format("error: {}", e.what())};
  }
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown suite '{}'", name));
}

}  // namespace gielab::tools
