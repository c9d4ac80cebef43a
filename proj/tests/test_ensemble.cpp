#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "support/test_support.hpp"
#include "twinterf/ensemble.hpp"
#include "twinterf/random.hpp"
#include "twinterf/spectralengine.hpp"

using namespace twinterf;

namespace {

EnsembleSpec small_spec(std::size_t events) {
  EnsembleSpec s;
  s.n_events = events;
  s.seed = 99;
  s.grid_size = 1024;
  const double h = 16.0 / 1024.0;
  for (int m = -192; m <= 192; m += 8) s.sweep.push_back(m * h);
  return s;
}

bool identical(const PatternSeries& a, const PatternSeries& b) {
  if (a.columns().size() != b.columns().size()) return false;
  for (std::size_t c = 0; c < a.columns().size(); ++c) {
    if (a.columns()[c].first != b.columns()[c].first || a.columns()[c].second != b.columns()[c].second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("counter-based stream is keyed and uniform") {
  const CounterRng a(1, 2, 0), b(1, 2, 0), c(1, 3, 0), d(1, 2, 1);
  CHECK(a.at(5) == b.at(5));
  CHECK(a.at(5) != c.at(5));
  CHECK(a.at(5) != d.at(5));
  double sum = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = a.uniform(static_cast<std::uint64_t>(i));
    CHECK_FALSE((u < 0.0 || u >= 1.0));
    sum += u;
    sq += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sq / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("random pulses are reproducible and independent") {
  const EnsembleSpec s = small_spec(1);
  const auto [u1, l1] = random_pulse(s, 7);
  const auto [u2, l2] = random_pulse(s, 7);
  CHECK(std::equal(u1.samples().begin(), u1.samples().end(), u2.samples().begin()));
  CHECK(std::equal(l1.samples().begin(), l1.samples().end(), l2.samples().begin()));
  CHECK(u1.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(inner_product(u1, l1)) < 0.9);
  const auto [u3, l3] = random_pulse(s, 8);
  CHECK_FALSE(std::equal(u1.samples().begin(), u1.samples().end(), u3.samples().begin()));
  // Gaussian intensity envelope
  for (std::size_t i = 0; i < u1.samples().size(); i += 37) {
    const double x = u1.grid().at(i);
    CHECK(std::norm(u1.samples()[i]) == doctest::Approx(std::exp(-x * x) / std::sqrt(std::numbers::pi)).epsilon(1e-9));
  }
}

TEST_CASE("phase correlation limits") {
  EnsembleSpec s = small_spec(1);
  const Envelope reference = make_gaussian(GaussianSpec{1.0, s.k0}, s.grid());
  s.phase_correlation_k = 0.02;  // smoothing over ~50 xi0: nearly constant phase
  for (std::uint64_t e = 0; e < 5; ++e) CHECK(std::abs(inner_product(random_pulse(s, e).first, reference)) > 0.99);

  // Overlap with the transform-limited pulse falls as the phase decorrelates.
  auto overlap = [&](double kc) {
    EnsembleSpec t = s;
    t.phase_correlation_k = kc;
    double sum = 0.0;
    for (std::uint64_t e = 0; e < 16; ++e) sum += std::abs(inner_product(random_pulse(t, e).first, reference));
    return sum / 16.0;
  };
  const double slow = overlap(0.5), mid = overlap(4.0), fast = overlap(1e4);
  CHECK(slow > mid);
  CHECK(mid > fast);
  CHECK(fast < 0.3);
}

TEST_CASE("a single event equals one spectral evaluation") {
  const EnsembleSpec s = small_spec(1);
  const auto series = average_patterns(s, EnsembleExperiment::hom_at_BS1);
  const auto [u, l] = random_pulse(s, 0);
  const SpectralEvaluator eval(SpectralPair::from_envelopes(u, l, 1.0), DetectorModel{});
  const auto& mean = series.column("P_UL_mean");
  for (std::size_t i = 0; i < s.sweep.size(); ++i) CHECK(std::abs(mean[i] - eval.hom(s.sweep[i]).P_UL_B) < 1e-12);
  CHECK(series.column("P_UL_event0") == mean);
  CHECK(series.column("P_UL_min") == mean);
  CHECK(series.column("P_UL_max") == mean);
}

TEST_CASE("averages are deterministic and independent of the thread count") {
  const EnsembleSpec s = small_spec(150);
  ::setenv("TWINTERF_THREADS", "1", 1);
  const auto one = average_patterns(s, EnsembleExperiment::two_photon_MZ);
  ::setenv("TWINTERF_THREADS", "4", 1);
  const auto four = average_patterns(s, EnsembleExperiment::two_photon_MZ);
  ::unsetenv("TWINTERF_THREADS");
  const auto again = average_patterns(s, EnsembleExperiment::two_photon_MZ);
  CHECK(identical(one, four));
  CHECK(identical(one, again));
}

TEST_CASE("averaged quantities stay in range") {
  const EnsembleSpec s = small_spec(200);
  const auto hom = average_patterns(s, EnsembleExperiment::hom_at_BS1);
  for (double v : hom.column("I_cm_mean")) CHECK(v >= 0.0);
  const auto mz = average_patterns(s, EnsembleExperiment::two_photon_MZ);
  for (const auto& name : {"P_UU_mean", "P_UU_min", "P_UU_max", "I_a_mean", "I_c_mean"}) {
    for (double v : mz.column(name)) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("standard error falls as one over root n") {
  EnsembleSpec s = small_spec(100);
  s.sweep = {0.0, 0.5};
  std::vector<double> sem;
  for (std::size_t n : {100u, 400u, 1600u}) {
    s.n_events = n;
    sem.push_back(average_patterns(s, EnsembleExperiment::hom_at_BS1).column("P_UL_sem")[0]);
  }
  CHECK(sem[0] / sem[1] == doctest::Approx(2.0).epsilon(0.2));
  CHECK(sem[1] / sem[2] == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("classical-period term dominates the half-period term for uncorrelated pulses") {
  // Lock-in amplitudes of the k0 and 2 k0 components of I_a inside the pulse.
  EnsembleSpec s = small_spec(1);
  s.k0 = 40.0;
  const double h = 16.0 / 1024.0;
  s.sweep.clear();
  for (int m = -128; m <= 128; ++m) s.sweep.push_back(m * h);
  double first = 0.0, second = 0.0;
  for (std::uint64_t e = 0; e < 20; ++e) {
    const auto [u, l] = random_pulse(s, e);
    const SpectralEvaluator eval(SpectralPair::from_envelopes(u, l, 1.0), DetectorModel{});
    const auto r = eval.mz_sweep(s.sweep);
    cplx a1{0.0, 0.0}, a2{0.0, 0.0};
    for (std::size_t i = 0; i < r.size(); ++i) {
      a1 += r[i].I_a * std::polar(1.0, -s.k0 * s.sweep[i]);
      a2 += r[i].I_a * std::polar(1.0, -2.0 * s.k0 * s.sweep[i]);
    }
    first += std::abs(a1);
    second += std::abs(a2);
  }
  CHECK(first > second);
}

TEST_CASE("invalid ensemble specs are rejected") {
  EnsembleSpec s = small_spec(1);
  s.n_events = 0;
  CHECK_THROWS_AS(average_patterns(s, EnsembleExperiment::hom_at_BS1), std::invalid_argument);
  s = small_spec(1);
  s.sweep.clear();
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
