#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "twinterf/envelope.hpp"
#include "twinterf/pattern.hpp"

namespace twinterf {

/// Random-phase pulse ensemble. Every pulse has the Gaussian intensity
/// profile exp(-xi^2 / xi0^2) and a phase theta(xi) taken from a random
/// phasor field smoothed over the length 1 / phase_correlation_k, so the
/// coherence length is about xi0 times (1 / (xi0 phase_correlation_k)).
struct EnsembleSpec {
  std::size_t n_events = 5000;
  std::uint64_t seed = 1;
  double envelope_xi0 = 1.0;
  /// Non-positive selects the default 4 / envelope_xi0.
  double phase_correlation_k = 0.0;
  std::vector<double> sweep;
  double k0 = 40.0;
  double eta = 0.0;
  std::size_t grid_size = 2048;
  double half_width_in_xi0 = 8.0;

  double correlation_k() const;
  Grid grid() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

enum class EnsembleExperiment { hom_at_BS1, two_photon_MZ };

/// The two independent pulses (U, L) of one event; depends only on
/// (seed, event_index).
std::pair<Envelope, Envelope> random_pulse(const EnsembleSpec& spec, std::uint64_t event_index);

/// Per-point running statistics merged in a fixed order.
struct RunningStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double min = 0.0;
  double max = 0.0;

  void add(double x);
  void merge(const RunningStats& other);
  double variance() const;
  double sem() const;
};

/// Event-averaged pattern. HOM columns: P_UL_mean, P_UL_sem, P_UL_min,
/// P_UL_max, P_UU_mean, I_cm_mean, P_UL_event0, intensity. MZ columns:
/// P_UU_mean, P_UU_sem, P_UU_min, P_UU_max, I_a_mean, I_c_mean, P_UU_event0,
/// intensity. Bit-identical for identical specs regardless of thread count.
PatternSeries average_patterns(const EnsembleSpec& spec, EnsembleExperiment experiment);

}  // namespace twinterf
