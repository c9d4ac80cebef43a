// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "support/test_support.hpp"
#include "twinterf/envelope.hpp"
#include "twinterf/fock_oracle.hpp"
#include "twinterf/modeengine.hpp"
#include "twinterf/spectralengine.hpp"

using namespace twinterf;
using twinterf::test::Csv;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Csv run_config(const std::string& name, const std::string& contents, const std::string& flags = "") {
  const std::string path = test::write_temp_config(name, contents);
  const auto r = test::run_cli("run " + path + " --deterministic " + flags);
  if (r.exit_code != 0) throw std::runtime_error("twinterf exited with " + std::to_string(r.exit_code) + ": " + r.err);
  return test::parse_csv(r.out);
}

double max_error(const Csv& csv, const std::string& column, const std::function<double(double)>& expected) {
  const auto x = csv.column(csv.header.front());
  const auto y = csv.column(column);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(y[i] - expected(x[i])));
  return worst;
}

Outcome ac1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto expected = [](double d) { return 0.5 * (1.0 - std::exp(-d * d / 4.0) * std::cos(10.0 * d)); };
  const auto analytic = run_config("ac1a.cfg", "scenario = single_photon\nengine = analytic\n", "--swap-channels");
  const auto spectral = run_config("ac1s.cfg", "scenario = single_photon\nengine = spectral\n", "--swap-channels");
  const double elapsed = seconds_since(t0);
  o.require(analytic.rows.size() == 401 && spectral.rows.size() == 401, "401 points");
  const double ea = max_error(analytic, "P_U", expected), es = max_error(spectral, "P_U", expected);
  o.require(ea < 1e-9, "analytic err " + fmt("%.2e", ea));
  o.require(es < 1e-6, "spectral err " + fmt("%.2e", es));
  o.require(elapsed < 5.0, fmt("%.2f s", elapsed));
  return o;
}

Outcome ac2() {
  Outcome o;
  const auto puu = [](double d) { return 0.25 * (1.0 - std::exp(-d * d / 2.0) * std::cos(20.0 * d)); };
  for (const char* engine : {"analytic", "spectral"}) {
    const double tol = std::string(engine) == "analytic" ? 1e-9 : 1e-6;
    const auto csv =
        run_config(std::string("ac2") + engine + ".cfg", std::string("scenario = two_photon_mz\nengine = ") + engine + "\n");
    const double e = max_error(csv, "P_UU", puu);
    o.require(e < tol, std::string(engine) + " P_UU err " + fmt("%.2e", e));
    const double r = max_error(csv, "2P_UU_plus_P_UL", [](double) { return 1.0; });
    o.require(r < 1e-9, "resolving dev " + fmt("%.2e", r));
    // Single-click signal: the P_UU fringe about its 1/4 baseline, mirrored, on a 1/2 background.
    const double s = max_error(csv, "P_UU_plus_P_UL", [&](double d) { return 0.5 + (0.5 - puu(d)); });
    o.require(s < 1e-9, "single-click dev " + fmt("%.2e", s));
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  const double target = std::sqrt(2.0 * std::log(2.0));
  for (const char* engine : {"analytic", "spectral"}) {
    const auto csv = run_config(std::string("ac3") + engine + ".cfg",
                                std::string("scenario = hom\nengine = ") + engine +
                                    "\nsweep.start = -12\nsweep.stop = 12\nsweep.step = 0.01\n");
    const auto x = csv.column("delta_xi");
    const auto p = csv.column("P_UL");
    const auto at = [&](double d) {
      const auto it = std::min_element(x.begin(), x.end(), [&](double a, double b) { return std::abs(a - d) < std::abs(b - d); });
      return p[static_cast<std::size_t>(it - x.begin())];
    };
    o.require(std::abs(at(0.0)) < 1e-9, std::string(engine) + " P_UL(0) " + fmt("%.1e", at(0.0)));
    o.require(std::abs(at(12.0) - 0.5) < 1e-6 && std::abs(at(-12.0) - 0.5) < 1e-6, "far 1/2");
    for (double side : {1.0, -1.0}) {
      double crossing = 0.0;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (side * x[i] < 0.0 || side * x[i + 1] < 0.0) continue;
        if ((p[i] - 0.25) * (p[i + 1] - 0.25) <= 0.0 && p[i] != p[i + 1]) {
          crossing = x[i] + (0.25 - p[i]) * (x[i + 1] - x[i]) / (p[i + 1] - p[i]);
          break;
        }
      }
      const double rel = std::abs(std::abs(crossing) - target) / target;
      o.require(rel < 0.02, "crossing " + fmt("%.4f", crossing));
    }
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  for (double zeta : {kPi / 2.0, 0.7}) {
    const auto csv = run_config("ac4.cfg", "scenario = two_delay\nengine = analytic\nzeta = " + fmt("%.17g", zeta) + "\n");
    const double s2 = std::pow(std::sin(zeta), 2);
    const double e = max_error(csv, "P_UU", [&](double d) { return 0.25 * (1.0 + std::exp(-d * d / 2.0)) * s2; });
    o.require(e < 1e-9, "zeta " + fmt("%.3f", zeta) + " err " + fmt("%.1e", e));
    const auto probs = single_photon_probs(std::polar(1.0, zeta));
    const double identity = std::abs(0.25 * s2 - probs.P_U * probs.P_L);
    o.require(identity < 1e-12, "P_U P_L identity " + fmt("%.1e", identity));
    const double column = max_error(csv, "P_UU_asymptote", [&](double) { return probs.P_U * probs.P_L; });
    o.require(column < 1e-12, "asymptote column " + fmt("%.1e", column));
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> mag(0.0, 1.0), phase(-kPi, kPi);
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (int draw = 0; draw < 200; ++draw) {
      const cplx a1 = std::polar(mag(rng), phase(rng));
      const int sign = (rng() & 1U) ? 1 : -1;
      const auto d = ModeDecomposition::from_alpha1(a1);
      const double oracle = oracle::fock_splitter_oracle(oracle::n_photon_splitter(n, sign), d).prob(n, 0);
      worst = std::max(worst, std::abs(oracle - n_photon_probs(n, a1, sign)));
    }
  }
  o.require(worst < 1e-12, "oracle err " + fmt("%.1e", worst));
  double gauss = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (int sign : {1, -1}) {
      const auto csv = run_config("ac5.cfg", "scenario = n_photon\nengine = analytic\nn = " + std::to_string(n) +
                                                 "\nsign = " + std::to_string(sign) + "\n");
      gauss = std::max(gauss, max_error(csv, "P_Un", [&](double x) {
                         return std::ldexp(1.0 + sign * std::exp(-n * x * x / 4.0) * std::cos(n * 10.0 * x), -n);
                       }));
    }
  }
  o.require(gauss < 1e-9, "Gaussian law err " + fmt("%.1e", gauss));
  return o;
}

Outcome ac6() {
  Outcome o;
  const double kappa = 4.0, k0 = 10.0;
  const Grid g = Grid::for_pulse(1.0, 8192, 12.0);
  const auto b = make_gaussian(GaussianSpec{1.0, k0, kappa, 0.0}, g);
  const auto c = make_gaussian(GaussianSpec{1.0, k0, -kappa, 0.0}, g);
  const auto pair = SpectralPair::from_envelopes(b, c, 1.0);
  const SpectralEvaluator eval(pair, DetectorModel{0.0});
  const ChirpedParams cp{1.0, k0, kappa, 0.0};
  double worst = 0.0, ad_lo = 1, ad_hi = -1, cd_lo = 1, cd_hi = -1;
  for (int i = -4000; i <= 4000; ++i) {
    const double d = i * 1e-3;
    const auto closed = chirped_closed_form(cp, d);
    const auto h = eval.hom(d);
    const auto m = eval.mz(d);
    for (double e : {h.I_am - closed.I_am, h.I_cm - closed.I_cm, h.P_UL_B - closed.P_UL_B, m.I_a - closed.I_ad,
                     m.I_c - closed.I_cd, m.P_UU_D - closed.P_UU_D}) {
      worst = std::max(worst, std::abs(e));
    }
  }
  o.require(worst < 1e-6, "closed-form err " + fmt("%.1e", worst));

  // Peak-to-peak of the half-period fringe needs several fringes inside the
  // I_ad envelope (width xi0 / sqrt(17)), so it is read off at k0 xi0 = 40.
  const SpectralEvaluator fine(SpectralPair::from_envelopes(make_gaussian(GaussianSpec{1.0, 40.0, kappa, 0.0}, g),
                                                            make_gaussian(GaussianSpec{1.0, 40.0, -kappa, 0.0}, g), 1.0),
                               DetectorModel{0.0});
  for (int i = -4000; i <= 4000; ++i) {
    const auto m = fine.mz(i * 1e-3);
    ad_lo = std::min(ad_lo, m.I_a);
    ad_hi = std::max(ad_hi, m.I_a);
    cd_lo = std::min(cd_lo, m.I_c);
    cd_hi = std::max(cd_hi, m.I_c);
  }
  const double ratio = (cd_hi - cd_lo) / (ad_hi - ad_lo) * std::sqrt(17.0);
  o.require(std::abs(ratio - 1.0) < 0.01, "ratio*sqrt17 " + fmt("%.4f", ratio));
  const double zero = eval.mz(0.0).P_UU_D;
  o.require(std::abs(zero) < 1e-9, "P_UU_D(0) " + fmt("%.1e", zero));

  // Narrow detector: peak-normalized pattern has the transform-limited fringe
  // shape, with the envelope width set by the detector-limited coherence length.
  const double eta = 10.0;
  const Grid wide = Grid::for_pulse(1.0, 16384, 48.0);
  const SpectralEvaluator narrow(SpectralPair::from_envelopes(make_gaussian(GaussianSpec{1.0, k0, kappa, 0.0}, wide),
                                                              make_gaussian(GaussianSpec{1.0, k0, -kappa, 0.0}, wide), 1.0),
                                 DetectorModel{eta});
  const double far = narrow.mz(40.0).P_UU_D;
  const double eff2 = (1.0 + eta + eta * kappa * kappa) / (1.0 + kappa * kappa);
  double shape = 0.0;
  for (int i = -800; i <= 800; ++i) {
    const double d = i * 0.01;
    const double tl = 1.0 - std::exp(-d * d / (2.0 * eff2)) * std::cos(2.0 * k0 * d);
    shape = std::max(shape, std::abs(narrow.mz(d).P_UU_D / far - tl));
  }
  o.require(shape < 1e-3, "narrow-detector shape err " + fmt("%.1e", shape));
  return o;
}

Outcome ac7() {
  Outcome o;
  const double lambda = 1.0, xi0 = 1.0, k0 = 10.0, dxi2 = kPi / (2.0 * k0);
  const Grid g = Grid::for_pulse(xi0, 4096, 14.0);
  const auto [even, odd] = make_orthogonal_pair(lambda, xi0, g, k0);
  double quad = 0.0, amp = 0.0, best = 0.0;
  for (int i = -60; i <= 60; ++i) {
    const double d1 = i * 0.1;
    const auto r = orthogonal_pair_pattern(lambda, xi0, k0, d1, dxi2);
    quad = std::max(quad, std::abs(std::abs(r.C) - std::abs(inner_product(delay(even, d1), odd))));
    amp = std::max(amp, std::abs(r.amplitude - 0.25 * (1.0 + r.C * r.C)));
    amp = std::max(amp, std::abs(r.P_UU - r.amplitude * std::pow(std::sin(k0 * dxi2), 2)));
    best = std::max(best, r.C * r.C);
  }
  o.require(quad < 1e-8, "C vs quadrature " + fmt("%.1e", quad));
  o.require(amp < 1e-12, "amplitude law " + fmt("%.1e", amp));
  const double at0 = orthogonal_pair_pattern(lambda, xi0, k0, 0.0, dxi2).P_UU;
  const double far_p = orthogonal_pair_pattern(lambda, xi0, k0, 40.0, dxi2).P_UU;
  const double far_m = orthogonal_pair_pattern(lambda, xi0, k0, -40.0, dxi2).P_UU;
  o.require(std::abs(at0 - 0.25) < 1e-6 && std::abs(far_p - 0.25) < 1e-6 && std::abs(far_m - 0.25) < 1e-6,
            "1/4 at 0 and far");
  o.require(best > 0.1, "max |C|^2 " + fmt("%.3f", best));
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto hom = run_config("ac8h.cfg", "scenario = ensemble_hom\nn_events = 5000\n");
  const auto mz = run_config("ac8m.cfg", "scenario = ensemble_mz\nn_events = 5000\n");
  const double elapsed = seconds_since(t0);

  const auto x = hom.column("delta_xi");
  const auto nearest = [&](double d) {
    return static_cast<std::size_t>(
        std::min_element(x.begin(), x.end(), [&](double a, double b) { return std::abs(a - d) < std::abs(b - d); }) -
        x.begin());
  };
  const auto mean = hom.column("P_UL_mean");
  const auto sem = hom.column("P_UL_sem");
  const std::size_t i0 = nearest(0.0), i4 = nearest(4.0);
  const double margin = mean[i4] - 3.0 * std::max(sem[i0], sem[i4]) - mean[i0];
  o.require(margin > 0.0, "dip " + fmt("%.4f", mean[i0]) + " vs " + fmt("%.4f", mean[i4]));

  const double period = 2.0 * kPi / 40.0;
  const auto mx = mz.column("delta_xi");
  const double single = test::fringe_amplitude(mx, mz.column("P_UU_event0"), period, 1.0, 2.5);
  const double averaged = test::fringe_amplitude(mx, mz.column("P_UU_mean"), period, 1.0, 2.5);
  o.require(single >= 10.0 * averaged, "fringe ratio " + fmt("%.1f", single / averaged));
  o.require(elapsed < 120.0, fmt("%.1f s", elapsed));
  return o;
}

Outcome ac9() {
  Outcome o;
  const cplx alpha = std::polar(0.8, 0.4);
  double real_c = 0.0, complex_c = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double phi = 2.0 * kPi * i / 64.0;
    const auto state = FockState1Mode::coherent(1.3, 20);
    real_c = std::max(real_c, std::abs(homodyne_signal(state, alpha, phi) - 2.0 * 0.8 * 1.3 * std::cos(phi - 0.4)));
    const cplx c = std::polar(1.3, 0.9);
    const auto rotated = FockState1Mode::coherent(c, 20);
    complex_c = std::max(complex_c,
                         std::abs(homodyne_signal(rotated, alpha, phi) - 2.0 * 0.8 * 1.3 * std::cos(phi - 0.4 + 0.9)));
  }
  o.require(real_c < 1e-6, "real c err " + fmt("%.1e", real_c));
  o.require(complex_c < 1e-6, "complex c err " + fmt("%.1e", complex_c));
  const bool zeros = homodyne_signal(FockState1Mode::vacuum(), alpha, 0.3) == 0.0 &&
                     homodyne_signal(FockState1Mode::fock(1), alpha, 0.3) == 0.0;
  o.require(zeros, "vacuum and |1> give 0");
  double linear = 0.0;
  const auto state = FockState1Mode::coherent(std::polar(1.3, 0.9), 20);
  const double base = homodyne_signal(state, 0.1, 0.5);
  for (double scale = 1.0; scale <= 10.0; scale += 0.5) {
    linear = std::max(linear, std::abs(homodyne_signal(state, 0.1 * scale, 0.5) - scale * base));
  }
  o.require(linear < 1e-12, "linearity " + fmt("%.1e", linear));
  return o;
}

Outcome ac10() {
  Outcome o;
  std::mt19937_64 rng(777);
  const Grid g = Grid::for_pulse(1.0, 2048, 12.0);
  std::uniform_real_distribution<double> delay_dist(-4.0, 4.0), eta_dist(0.0, 3.0);
  double conservation = 0.0, parseval = 0.0, cross = 0.0, min_icm = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto e1 = test::random_envelope(rng, g, 10.0);
    const auto e2 = test::random_envelope(rng, g, 10.0);
    const auto s1 = to_spectrum(e1);
    parseval = std::max(parseval, std::abs(s1.norm_squared() - e1.norm_squared()));
    const SpectralEvaluator flat(SpectralPair::from_envelopes(e1, e2, 1.0), DetectorModel{});
    const SpectralEvaluator windowed(SpectralPair::from_envelopes(e1, e2, 1.0), DetectorModel{eta_dist(rng)});
    for (int k = 0; k < 4; ++k) {
      const double d = delay_dist(rng);
      const auto probs = hom_probs(decompose(e1, delay(e2, d)));
      conservation = std::max(conservation, std::abs(probs.total() - 1.0));
      const auto h = flat.hom(d);
      conservation = std::max(conservation, std::abs(h.P_UL_B + 2.0 * h.P_UU_B - 1.0));
      cross = std::max({cross, std::abs(h.P_UL_B - probs.P_UL), std::abs(h.P_UU_B - probs.P_UU)});
      const auto a1 = inner_product(delay(e1, d), e1);
      const SinglePhotonProbs sp = single_photon_probs(a1);
      conservation = std::max(conservation, std::abs(sp.P_U + sp.P_L - 1.0));
      cross = std::max(cross, std::abs(flat.single_photon(d).P_U - sp.P_U));
      min_icm = std::min({min_icm, h.I_cm, windowed.hom(d).I_cm});
    }
  }
  o.require(conservation < 1e-12, "conservation " + fmt("%.1e", conservation));
  o.require(min_icm >= 0.0, "min I_cm " + fmt("%.1e", min_icm));
  o.require(parseval < 1e-10, "Parseval " + fmt("%.1e", parseval));
  o.require(cross < 1e-6, "engine cross-equivalence " + fmt("%.1e", cross));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 single-photon fringe", ac1},     {"AC2 two-photon fringe", ac2},   {"AC3 HOM dip", ac3},
      {"AC4 two-delay configuration", ac4},  {"AC5 n-photon law", ac5},        {"AC6 chirped Gaussian pair", ac6},
      {"AC7 orthogonal pair", ac7},          {"AC8 random-phase ensemble", ac8}, {"AC9 homodyne signal", ac9},
      {"AC10 global invariants", ac10},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
