#include "twinterf/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "twinterf/ensemble.hpp"
#include "twinterf/envelope.hpp"
#include "twinterf/modeengine.hpp"
#include "twinterf/parallel.hpp"
#include "twinterf/spectralengine.hpp"

namespace twinterf {
namespace {

constexpr double kPi = std::numbers::pi;

// Automatic windows keep at least this many samples per 8 xi0 of width.
constexpr std::size_t kSamplesPer8Xi0 = 4096;

struct Context {
  const ScenarioConfig& c;
  Engine engine;
  std::vector<double> sweep;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Window wide enough that every delayed pulse stays inside and circular
// correlations do not wrap.
Grid pulse_grid(const ScenarioConfig& c, double max_delay) {
  const double half_width = c.grid_half_width > 0.0 ? c.grid_half_width : 8.0 + max_delay / c.xi0;
  const double chirp_factor = std::sqrt(1.0 + c.kappa * c.kappa);
  const std::size_t size =
      c.grid_size > 0 ? c.grid_size
                      : next_pow2(static_cast<std::size_t>(std::ceil(kSamplesPer8Xi0 * half_width / 8.0 *
                                                                     std::max(1.0, chirp_factor / 4.0))));
  return Grid::for_pulse(c.xi0, size, half_width);
}

Envelope gaussian(const ScenarioConfig& c, const Grid& g, double kappa) {
  GaussianSpec spec;
  spec.xi0 = c.xi0;
  spec.k0 = c.k0();
  spec.kappa = kappa;
  return make_gaussian(spec, g);
}

std::vector<double> default_sweep(const ScenarioConfig& c) {
  const double lo = c.sweep_start.value_or(c.scenario == Scenario::homodyne ? 0.0 : -4.0 * c.xi0);
  const double hi = c.sweep_stop.value_or(c.scenario == Scenario::homodyne ? 2.0 * kPi : 4.0 * c.xi0);
  double step = 0.02 * c.xi0;
  if (c.scenario == Scenario::homodyne) {
    step = 2.0 * kPi / 128.0;
  } else if (c.scenario == Scenario::ensemble_hom || c.scenario == Scenario::ensemble_mz) {
    // One sample of the ensemble grid, so whole sweeps go through the DFT.
    const std::size_t n = c.grid_size > 0 ? c.grid_size : 2048;
    const double hw = c.grid_half_width > 0.0 ? c.grid_half_width : 8.0;
    step = 2.0 * hw * c.xi0 / static_cast<double>(n);
  }
  step = c.sweep_step.value_or(step);
  if (!(step > 0.0)) throw ConfigError("sweep.step", "must be positive");
  if (hi < lo) throw ConfigError("sweep.stop", "must not lie before sweep.start");
  if ((hi - lo) / step > 1e7) throw ConfigError("sweep.step", "too many sweep points");
  return make_sweep(lo, hi, step);
}

void require_transform_limited(const Context& x) {
  if (x.c.eta != 0.0) throw ConfigError("eta", "a detector window needs engine = spectral");
  if (x.engine == Engine::analytic && x.c.kappa != 0.0) {
    throw ConfigError("kappa", "the analytic correlation is for transform-limited pulses; use engine = envelope");
  }
}

std::vector<cplx> envelope_alphas(const Context& x) {
  const Grid g = pulse_grid(x.c, max_abs(x.sweep));
  const Envelope e = gaussian(x.c, g, x.c.kappa);
  std::vector<cplx> a(x.sweep.size());
  parallel_for(a.size(), [&](std::size_t i) { a[i] = inner_product(delay(e, x.sweep[i]), e); });
  return a;
}

std::vector<ModeDecomposition> envelope_decompositions(const Context& x) {
  const Grid g = pulse_grid(x.c, max_abs(x.sweep));
  const Envelope e = gaussian(x.c, g, x.c.kappa);
  std::vector<ModeDecomposition> d(x.sweep.size());
  parallel_for(d.size(), [&](std::size_t i) { d[i] = decompose(e, delay(e, x.sweep[i])); });
  return d;
}

std::vector<cplx> alphas(const Context& x) {
  if (x.engine == Engine::envelope) return envelope_alphas(x);
  std::vector<cplx> a(x.sweep.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = gaussian_alpha1(x.c.xi0, x.c.k0(), x.sweep[i]);
  return a;
}

std::vector<ModeDecomposition> decompositions(const Context& x) {
  if (x.engine == Engine::envelope) return envelope_decompositions(x);
  std::vector<ModeDecomposition> d;
  for (const cplx a : alphas(x)) d.push_back(ModeDecomposition::from_alpha1(a));
  return d;
}

SpectralEvaluator identical_pair_evaluator(const Context& x) {
  const Grid g = pulse_grid(x.c, max_abs(x.sweep));
  const Envelope e = gaussian(x.c, g, x.c.kappa);
  return SpectralEvaluator(SpectralPair::from_envelopes(e, e, x.c.xi0), DetectorModel{x.c.eta});
}

// Conservation column: total probability, or detected fraction under a window.
std::string total_name(const ScenarioConfig& c) { return c.eta == 0.0 ? "P_total" : "P_detected"; }

PatternSeries run_single_photon(const Context& x, const RunOptions& o) {
  std::vector<double> pu(x.sweep.size()), pl(x.sweep.size()), total(x.sweep.size());
  if (x.engine == Engine::spectral) {
    const auto r = identical_pair_evaluator(x).single_photon_sweep(x.sweep);
    for (std::size_t i = 0; i < r.size(); ++i) {
      pu[i] = r[i].P_U;
      pl[i] = r[i].P_L;
    }
  } else {
    require_transform_limited(x);
    const auto a = alphas(x);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto p = single_photon_probs(a[i]);
      pu[i] = p.P_U;
      pl[i] = p.P_L;
    }
  }
  for (std::size_t i = 0; i < total.size(); ++i) total[i] = pu[i] + pl[i];
  if (o.swap_channels) std::swap(pu, pl);
  PatternSeries s("delta_xi", x.sweep);
  s.add_column("P_U", std::move(pu));
  s.add_column("P_L", std::move(pl));
  s.add_column(total_name(x.c), std::move(total));
  return s;
}

PatternSeries run_hom(const Context& x) {
  const std::size_t n = x.sweep.size();
  std::vector<double> uu(n), ul(n), total(n), iam, icm;
  if (x.engine == Engine::spectral) {
    const auto r = identical_pair_evaluator(x).hom_sweep(x.sweep);
    iam.resize(n);
    icm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      uu[i] = r[i].P_UU_B;
      ul[i] = r[i].P_UL_B;
      iam[i] = r[i].I_am;
      icm[i] = r[i].I_cm;
    }
  } else {
    require_transform_limited(x);
    const auto d = decompositions(x);
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = hom_probs(d[i]);
      uu[i] = p.P_UU;
      ul[i] = p.P_UL;
    }
  }
  for (std::size_t i = 0; i < n; ++i) total[i] = 2.0 * uu[i] + ul[i];
  PatternSeries s("delta_xi", x.sweep);
  s.add_column("P_UU", uu);
  s.add_column("P_LL", std::move(uu));
  s.add_column("P_UL", std::move(ul));
  s.add_column(total_name(x.c), std::move(total));
  if (!iam.empty()) {
    s.add_column("I_am", std::move(iam));
    s.add_column("I_cm", std::move(icm));
  }
  return s;
}

PatternSeries run_two_photon_mz(const Context& x) {
  const std::size_t n = x.sweep.size();
  std::vector<double> uu(n), ul(n), total(n), ia, ic;
  if (x.engine == Engine::spectral) {
    const auto eval = identical_pair_evaluator(x);
    const auto r = eval.mz_sweep(x.sweep);
    // Both photons detected: product of the two detected fractions.
    const auto detected = eval.hom(0.0).I_am * 2.0;
    ia.resize(n);
    ic.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      uu[i] = r[i].P_UU_D;
      ul[i] = detected - 2.0 * r[i].P_UU_D;
      ia[i] = r[i].I_a;
      ic[i] = r[i].I_c;
    }
  } else {
    require_transform_limited(x);
    const auto a = alphas(x);
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = two_identical_mz_probs(a[i]);
      uu[i] = p.P_UU;
      ul[i] = p.P_UL;
    }
  }
  const auto response =
      x.c.response == "single_click" ? DetectorResponse::single_click : DetectorResponse::number_resolving;
  std::vector<double> sum(n), resolving(n), detector(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PairProbs p{uu[i], uu[i], ul[i]};
    total[i] = p.total();
    sum[i] = detector_response(p, DetectorResponse::single_click);
    resolving[i] = detector_response(p, DetectorResponse::number_resolving);
    detector[i] = detector_response(p, response);
  }
  PatternSeries s("delta_xi", x.sweep);
  s.add_column("P_UU", uu);
  s.add_column("P_LL", std::move(uu));
  s.add_column("P_UL", std::move(ul));
  s.add_column("P_UU_plus_P_UL", std::move(sum));
  s.add_column("2P_UU_plus_P_UL", std::move(resolving));
  s.add_column("detector_signal", std::move(detector));
  s.add_column(total_name(x.c), std::move(total));
  if (!ia.empty()) {
    s.add_column("I_a", std::move(ia));
    s.add_column("I_c", std::move(ic));
  }
  return s;
}

PatternSeries run_two_delay(const Context& x) {
  require_transform_limited(x);
  const auto d = decompositions(x);
  const std::size_t n = x.sweep.size();
  std::vector<double> uu(n), ul(n), total(n), asym(n), product(n);
  const auto single = single_photon_probs(std::polar(1.0, x.c.zeta));
  const double s2 = std::sin(x.c.zeta) * std::sin(x.c.zeta);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = two_delay_probs(d[i], x.c.zeta);
    uu[i] = p.P_UU;
    ul[i] = p.P_UL;
    total[i] = p.total();
    asym[i] = 0.25 * s2;
    product[i] = single.P_U * single.P_L;
  }
  PatternSeries s("delta_xi", x.sweep);
  s.add_column("P_UU", uu);
  s.add_column("P_LL", std::move(uu));
  s.add_column("P_UL", std::move(ul));
  s.add_column("P_total", std::move(total));
  s.add_column("P_UU_asymptote", std::move(asym));
  s.add_column("P_U_times_P_L", std::move(product));
  return s;
}

PatternSeries run_n_photon(const Context& x) {
  require_transform_limited(x);
  const auto a = alphas(x);
  std::vector<double> p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = n_photon_probs(x.c.n, a[i], x.c.sign);
  PatternSeries s("delta_xi", x.sweep);
  s.add_column("P_Un", std::move(p));
  return s;
}

PatternSeries run_chirped(const Context& x, const RunOptions& o) {
  const std::size_t n = x.sweep.size();
  std::vector<double> iam(n), icm(n), pul(n), iad(n), icd(n), puu(n), pu_half(n), pul_half(n);
  if (x.engine == Engine::spectral) {
    const Grid g = pulse_grid(x.c, max_abs(x.sweep));
    const Envelope b = gaussian(x.c, g, x.c.kappa);
    const Envelope gm = gaussian(x.c, g, -x.c.kappa);
    const DetectorModel det{x.c.eta};
    const SpectralEvaluator pair(SpectralPair::from_envelopes(b, gm, x.c.xi0), det);
    const SpectralEvaluator single(SpectralPair::from_envelopes(b, b, x.c.xi0), det);
    const auto h = pair.hom_sweep(x.sweep);
    const auto m = pair.mz_sweep(x.sweep);
    const auto p = single.single_photon_sweep(x.sweep);
    for (std::size_t i = 0; i < n; ++i) {
      iam[i] = h[i].I_am;
      icm[i] = h[i].I_cm;
      pul[i] = h[i].P_UL_B;
      iad[i] = m[i].I_a;
      icd[i] = m[i].I_c;
      puu[i] = m[i].P_UU_D;
      pu_half[i] = 0.5 * (o.swap_channels ? p[i].P_L : p[i].P_U);
    }
  } else {
    const ChirpedParams cp{x.c.xi0, x.c.k0(), x.c.kappa, x.c.eta};
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = chirped_closed_form(cp, x.sweep[i]);
      const auto p = chirped_single_photon(cp, x.sweep[i]);
      iam[i] = r.I_am;
      icm[i] = r.I_cm;
      pul[i] = r.P_UL_B;
      iad[i] = r.I_ad;
      icd[i] = r.I_cd;
      puu[i] = r.P_UU_D;
      pu_half[i] = 0.5 * (o.swap_channels ? p.P_L : p.P_U);
    }
  }
  for (std::size_t i = 0; i < n; ++i) pul_half[i] = 0.5 * pul[i];
  PatternSeries s("delta_xi", x.sweep);
  s.add_column("I_am", std::move(iam));
  s.add_column("I_cm", std::move(icm));
  s.add_column("P_UL_B", std::move(pul));
  s.add_column("I_ad", std::move(iad));
  s.add_column("I_cd", std::move(icd));
  s.add_column("P_UU_D", std::move(puu));
  s.add_column("P_U_half", std::move(pu_half));
  s.add_column("P_UL_half", std::move(pul_half));
  return s;
}

PatternSeries run_orthogonal(const Context& x) {
  if (x.c.eta != 0.0) throw ConfigError("eta", "the orthogonal pair assumes a flat detector");
  const std::size_t n = x.sweep.size();
  const double lambda = x.c.lambda_xi0 / x.c.xi0;
  const double dxi2 = x.c.dxi2.value_or(kPi / (2.0 * x.c.k0()));
  std::vector<double> c_abs(n), c2(n), amp(n), puu(n), full;
  if (x.engine == Engine::spectral) {
    const Grid g = pulse_grid(x.c, max_abs(x.sweep) + std::abs(dxi2));
    const auto [even, odd] = make_orthogonal_pair(lambda, x.c.xi0, g, x.c.k0());
    full.resize(n);
    parallel_for(n, [&](std::size_t i) {
      const Envelope shifted = delay(even, x.sweep[i]);
      const SpectralPair pair = SpectralPair::from_envelopes(shifted, odd, x.c.xi0);
      const cplx c = inner_product(shifted, odd);
      const auto r = small_delay_limit(pair, dxi2);
      c_abs[i] = std::abs(c);
      c2[i] = std::norm(c);
      amp[i] = 0.25 * (1.0 + c2[i]);
      puu[i] = r.P_UU;
      full[i] = mz_spectral(pair, DetectorModel{}, dxi2).P_UU_D;
    });
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = orthogonal_pair_pattern(lambda, x.c.xi0, x.c.k0(), x.sweep[i], dxi2);
      c_abs[i] = std::abs(r.C);
      c2[i] = r.C * r.C;
      amp[i] = r.amplitude;
      puu[i] = r.P_UU;
    }
  }
  PatternSeries s("delta_xi1", x.sweep);
  s.add_column("C_abs", std::move(c_abs));
  s.add_column("C_squared", std::move(c2));
  s.add_column("amplitude", std::move(amp));
  s.add_column("P_UU", std::move(puu));
  if (!full.empty()) s.add_column("P_UU_full", std::move(full));
  return s;
}

PatternSeries run_ensemble(const Context& x, EnsembleExperiment experiment) {
  EnsembleSpec spec;
  spec.n_events = x.c.n_events;
  spec.seed = x.c.seed;
  spec.envelope_xi0 = x.c.xi0;
  spec.phase_correlation_k = x.c.phase_correlation_k;
  spec.sweep = x.sweep;
  spec.k0 = x.c.k0();
  spec.eta = x.c.eta;
  if (x.c.grid_size > 0) spec.grid_size = x.c.grid_size;
  if (x.c.grid_half_width > 0.0) spec.half_width_in_xi0 = x.c.grid_half_width;
  if (max_abs(x.sweep) > spec.half_width_in_xi0 * x.c.xi0) {
    throw ConfigError("sweep.stop", "ensemble delays must stay inside grid.half_width");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("ensemble", e.what());
  }
  return average_patterns(spec, experiment);
}

PatternSeries run_homodyne(const Context& x) {
  FockState1Mode state;
  if (x.c.state == "vacuum") {
    state = FockState1Mode::vacuum();
  } else if (x.c.state == "fock") {
    state = FockState1Mode::fock(x.c.fock_n);
  } else {
    state = FockState1Mode::coherent(std::polar(x.c.c_abs, x.c.c_arg), x.c.n_max);
  }
  const cplx alpha = std::polar(x.c.alpha_abs, x.c.alpha_arg);
  std::vector<double> signal(x.sweep.size());
  for (std::size_t i = 0; i < signal.size(); ++i) signal[i] = homodyne_signal(state, alpha, x.sweep[i]);
  PatternSeries s("phi", x.sweep);
  s.add_column("signal", std::move(signal));
  if (x.c.state == "coherent") {
    std::vector<double> limit(x.sweep.size());
    for (std::size_t i = 0; i < limit.size(); ++i) {
      limit[i] = 2.0 * x.c.alpha_abs * x.c.c_abs * std::cos(x.sweep[i] - x.c.alpha_arg + x.c.c_arg);
    }
    s.add_column("coherent_limit", std::move(limit));
  }
  s.add_metadata("state.mean_photon_number", format_number(state.mean_photon_number()));
  return s;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
  using E = Engine;
  static const std::vector<ScenarioInfo> catalog = {
      {Scenario::single_photon, "single_photon", "one photon through the interferometer vs delay",
       "P_U = (1 + Re alpha1)/2; Gaussian fringe (1 - exp(-dxi^2/4xi0^2) cos k0 dxi)/2 with --swap-channels",
       {E::analytic, E::envelope, E::spectral}},
      {Scenario::hom, "hom", "Hong-Ou-Mandel dip behind the first splitter",
       "P_UL = alpha3^2/2 = (1 - exp(-dxi^2/2xi0^2))/2, P_UU = P_LL = |alpha1|^2/2 + alpha3^2/4",
       {E::analytic, E::envelope, E::spectral}},
      {Scenario::two_photon_mz, "two_photon_mz", "two identical photons, coincidence and detector signals",
       "P_UU = (1 - exp(-dxi^2/2xi0^2) cos 2k0 dxi)/4; 2P_UU + P_UL = 1; P_UU + P_UL on a 1/2 background",
       {E::analytic, E::envelope, E::spectral}},
      {Scenario::two_delay, "two_delay", "delay before the first splitter plus a short phase delay zeta",
       "P_UU = (1 + exp(-dxi^2/2xi0^2)) sin^2(zeta)/4, asymptote sin^2(zeta)/4 = P_U P_L",
       {E::analytic, E::envelope}},
      {Scenario::n_photon, "n_photon", "all n photons in U behind an n-photon splitter",
       "P_Un = 2^-(n+1) (2 +- 2 Re alpha1^n)", {E::analytic, E::envelope}},
      {Scenario::chirped, "chirped", "oppositely chirped Gaussian pair with detector window",
       "P_UU_D, P_U/2 and P_UL_B/2 vs delay; closed forms for I_am, I_cm, I_ad, I_cd",
       {E::spectral, E::analytic}},
      {Scenario::orthogonal, "orthogonal", "even/odd Gaussian pair, half-period amplitude vs first delay",
       "P_UU = (1 + |C|^2) sin^2(k0 dxi2)/4 with the even/odd correlation C(dxi1)", {E::analytic, E::spectral}},
      {Scenario::ensemble_hom, "ensemble_hom", "random-phase pulses, HOM dip single event and event average",
       "HOM dip of Gaussian-envelope random-phase photons, single event and 5000-event average",
       {E::spectral}},
      {Scenario::ensemble_mz, "ensemble_mz", "random-phase pulses, two-photon pattern and event average",
       "two-photon pattern of Gaussian-envelope random-phase photons, single event and 5000-event average",
       {E::spectral}},
      {Scenario::homodyne, "homodyne", "homodyne difference signal vs reference phase",
       "S = 2 Re{e^(-i phi) alpha sum_n a*_(n+1) sqrt(n+1) a_n}", {E::analytic}},
  };
  return catalog;
}

const ScenarioInfo& scenario_info(Scenario s) {
  for (const auto& info : scenario_catalog()) {
    if (info.id == s) return info;
  }
  throw std::logic_error("scenario missing from catalog");
}

PatternSeries run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  const ScenarioInfo& info = scenario_info(config.scenario);
  const Engine engine = config.engine.value_or(info.engines.front());
  if (std::find(info.engines.begin(), info.engines.end(), engine) == info.engines.end()) {
    throw ConfigError("engine", "scenario " + info.name + " does not support engine " + to_string(engine));
  }
  Context x{config, engine, default_sweep(config)};
  PatternSeries s = [&] {
    switch (config.scenario) {
      case Scenario::single_photon:
        return run_single_photon(x, options);
      case Scenario::hom:
        return run_hom(x);
      case Scenario::two_photon_mz:
        return run_two_photon_mz(x);
      case Scenario::two_delay:
        return run_two_delay(x);
      case Scenario::n_photon:
        return run_n_photon(x);
      case Scenario::chirped:
        return run_chirped(x, options);
      case Scenario::orthogonal:
        return run_orthogonal(x);
      case Scenario::ensemble_hom:
        return run_ensemble(x, EnsembleExperiment::hom_at_BS1);
      case Scenario::ensemble_mz:
        return run_ensemble(x, EnsembleExperiment::two_photon_MZ);
      case Scenario::homodyne:
        return run_homodyne(x);
    }
    throw std::logic_error("unhandled scenario");
  }();
  s.add_metadata("engine.resolved", to_string(engine));
  s.add_metadata("swap_channels", options.swap_channels ? "true" : "false");
  return s;
}

std::string list_scenarios() {
  std::ostringstream out;
  for (const auto& info : scenario_catalog()) {
    out << info.name << "\n  " << info.summary << "\n  reproduces: " << info.reproduces << "\n  engines:";
    for (const Engine e : info.engines) out << ' ' << to_string(e);
    out << '\n';
  }
  return out.str();
}

}  // namespace twinterf
