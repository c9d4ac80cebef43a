#include "twinterf/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fourier.hpp"
#include "twinterf/parallel.hpp"
#include "twinterf/random.hpp"
#include "twinterf/spectralengine.hpp"

namespace twinterf {
namespace {

// Events per reduction block; blocks are merged in index order.
constexpr std::size_t kBlockSize = 64;

Envelope random_phase_pulse(const EnsembleSpec& spec, const Grid& grid, const CounterRng& rng) {
  const std::size_t n = grid.size;
  std::vector<cplx> field(n);
  for (std::size_t i = 0; i < n; ++i) field[i] = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform(i));

  // Circular Gaussian smoothing with standard deviation 1 / phase_correlation_k.
  const double sigma = 1.0 / spec.correlation_k();
  detail::dft_forward(field);
  const double dk = grid.k_step();
  for (std::size_t m = 0; m < n; ++m) {
    const double k = dk * static_cast<double>(m <= n / 2 ? static_cast<long long>(m)
                                                         : static_cast<long long>(m) - static_cast<long long>(n));
    field[m] *= std::exp(-0.5 * sigma * sigma * k * k);
  }
  detail::dft_backward(field);

  const double xi0 = spec.envelope_xi0;
  std::vector<cplx> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = grid.at(i);
    samples[i] = std::polar(std::exp(-xi * xi / (2.0 * xi0 * xi0)), std::arg(field[i]));
  }
  return normalize(Envelope(grid, std::move(samples), spec.k0, "random"));
}

struct EventPattern {
  std::vector<double> primary;    // P_UL (HOM) or P_UU (MZ)
  std::vector<double> secondary;  // P_UU (HOM) or I_a (MZ)
  std::vector<double> tertiary;   // I_cm (HOM) or I_c (MZ)
};

EventPattern evaluate_event(const EnsembleSpec& spec, EnsembleExperiment experiment, std::uint64_t event) {
  const auto [upper, lower] = random_pulse(spec, event);
  const SpectralPair pair = SpectralPair::from_envelopes(upper, lower, spec.envelope_xi0);
  const SpectralEvaluator eval(pair, DetectorModel{spec.eta, DetectorResponse::number_resolving});
  EventPattern p;
  const std::size_t n = spec.sweep.size();
  p.primary.resize(n);
  p.secondary.resize(n);
  p.tertiary.resize(n);
  if (experiment == EnsembleExperiment::hom_at_BS1) {
    const auto r = eval.hom_sweep(spec.sweep);
    for (std::size_t i = 0; i < n; ++i) {
      p.primary[i] = r[i].P_UL_B;
      p.secondary[i] = r[i].P_UU_B;
      p.tertiary[i] = r[i].I_cm;
    }
  } else {
    const auto r = eval.mz_sweep(spec.sweep);
    for (std::size_t i = 0; i < n; ++i) {
      p.primary[i] = r[i].P_UU_D;
      p.secondary[i] = r[i].I_a;
      p.tertiary[i] = r[i].I_c;
    }
  }
  return p;
}

struct BlockStats {
  std::vector<RunningStats> primary;
  std::vector<RunningStats> secondary;
  std::vector<RunningStats> tertiary;

  explicit BlockStats(std::size_t n) : primary(n), secondary(n), tertiary(n) {}

  void add(const EventPattern& p) {
    for (std::size_t i = 0; i < primary.size(); ++i) {
      primary[i].add(p.primary[i]);
      secondary[i].add(p.secondary[i]);
      tertiary[i].add(p.tertiary[i]);
    }
  }

  void merge(const BlockStats& other) {
    for (std::size_t i = 0; i < primary.size(); ++i) {
      primary[i].merge(other.primary[i]);
      secondary[i].merge(other.secondary[i]);
      tertiary[i].merge(other.tertiary[i]);
    }
  }
};

template <class F>
std::vector<double> map_stats(const std::vector<RunningStats>& s, F f) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = f(s[i]);
  return out;
}

}  // namespace

double EnsembleSpec::correlation_k() const {
  return phase_correlation_k > 0.0 ? phase_correlation_k : 4.0 / envelope_xi0;
}

Grid EnsembleSpec::grid() const { return Grid::for_pulse(envelope_xi0, grid_size, half_width_in_xi0); }

void EnsembleSpec::validate() const {
  if (n_events < 1) throw std::invalid_argument("ensemble.n_events must be at least 1");
  if (!(envelope_xi0 > 0.0)) throw std::invalid_argument("ensemble.xi0 must be positive");
  if (!std::isfinite(phase_correlation_k)) throw std::invalid_argument("ensemble.phase_correlation_k must be finite");
  if (!(eta >= 0.0)) throw std::invalid_argument("ensemble.eta must be non-negative");
  if (grid_size < 16) throw std::invalid_argument("ensemble.grid_size must be at least 16");
  if (!(half_width_in_xi0 > 0.0)) throw std::invalid_argument("ensemble.half_width must be positive");
  if (sweep.empty()) throw std::invalid_argument("ensemble.sweep must not be empty");
}

std::pair<Envelope, Envelope> random_pulse(const EnsembleSpec& spec, std::uint64_t event_index) {
  const Grid grid = spec.grid();
  return {random_phase_pulse(spec, grid, CounterRng(spec.seed, event_index, 0)),
          random_phase_pulse(spec, grid, CounterRng(spec.seed, event_index, 1))};
}

void RunningStats::add(double x) {
  ++count;
  if (count == 1) {
    mean = x;
    m2 = 0.0;
    min = max = x;
    return;
  }
  const double d = x - mean;
  mean += d / static_cast<double>(count);
  m2 += d * (x - mean);
  min = std::min(min, x);
  max = std::max(max, x);
}

void RunningStats::merge(const RunningStats& o) {
  if (o.count == 0) return;
  if (count == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(o.count);
  const double n = na + nb;
  const double d = o.mean - mean;
  mean += d * nb / n;
  m2 += o.m2 + d * d * na * nb / n;
  count += o.count;
  min = std::min(min, o.min);
  max = std::max(max, o.max);
}

double RunningStats::variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }

double RunningStats::sem() const { return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0; }

PatternSeries average_patterns(const EnsembleSpec& spec, EnsembleExperiment experiment) {
  spec.validate();
  const std::size_t n = spec.sweep.size();
  const std::size_t blocks = (spec.n_events + kBlockSize - 1) / kBlockSize;
  std::vector<BlockStats> partial(blocks, BlockStats(n));
  std::vector<double> first_event;

  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kBlockSize;
    const std::size_t hi = std::min(spec.n_events, lo + kBlockSize);
    for (std::size_t e = lo; e < hi; ++e) {
      EventPattern p = evaluate_event(spec, experiment, e);
      if (e == 0) first_event = p.primary;
      partial[b].add(p);
    }
  });

  BlockStats total(n);
  for (const auto& b : partial) total.merge(b);

  const bool hom = experiment == EnsembleExperiment::hom_at_BS1;
  const std::string p = hom ? "P_UL" : "P_UU";
  PatternSeries series("delta_xi", spec.sweep);
  series.add_column(p + "_mean", map_stats(total.primary, [](const RunningStats& s) { return s.mean; }));
  series.add_column(p + "_sem", map_stats(total.primary, [](const RunningStats& s) { return s.sem(); }));
  series.add_column(p + "_min", map_stats(total.primary, [](const RunningStats& s) { return s.min; }));
  series.add_column(p + "_max", map_stats(total.primary, [](const RunningStats& s) { return s.max; }));
  series.add_column(hom ? "P_UU_mean" : "I_a_mean",
                    map_stats(total.secondary, [](const RunningStats& s) { return s.mean; }));
  series.add_column(hom ? "I_cm_mean" : "I_c_mean",
                    map_stats(total.tertiary, [](const RunningStats& s) { return s.mean; }));
  series.add_column(p + "_event0", std::move(first_event));
  std::vector<double> intensity(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = spec.sweep[i] / spec.envelope_xi0;
    intensity[i] = std::exp(-x * x);
  }
  series.add_column("intensity", std::move(intensity));

  series.add_metadata("ensemble.n_events", std::to_string(spec.n_events));
  series.add_metadata("ensemble.seed", std::to_string(spec.seed));
  series.add_metadata("ensemble.xi0", format_number(spec.envelope_xi0));
  series.add_metadata("ensemble.phase_correlation_k", format_number(spec.correlation_k()));
  series.add_metadata("ensemble.k0", format_number(spec.k0));
  series.add_metadata("ensemble.eta", format_number(spec.eta));
  series.add_metadata("ensemble.grid_size", std::to_string(spec.grid_size));
  series.add_metadata("ensemble.half_width_in_xi0", format_number(spec.half_width_in_xi0));
  return series;
}

}  // namespace twinterf
