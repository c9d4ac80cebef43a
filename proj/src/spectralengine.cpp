#include "twinterf/spectralengine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fourier.hpp"
#include "twinterf/errors.hpp"

namespace twinterf {
namespace {

// The rotation recurrence is re-seeded this often to bound phase drift.
constexpr std::size_t kReseedEvery = 64;
// Short sweeps are cheaper point by point than through three DFTs.
constexpr std::size_t kMinLatticeSweep = 8;
constexpr double kLatticeTolerance = 1e-9;

std::vector<double> window_weights(const Spectrum& s, double eta, double xi0_ref) {
  std::vector<double> w(s.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double k = s.k_at(j);
    w[j] = std::exp(-eta * xi0_ref * xi0_ref * k * k);
  }
  return w;
}

}  // namespace

double ChirpedParams::delta_ratio() const { return 1.0 / std::sqrt(1.0 + kappa * kappa); }

SpectralPair SpectralPair::from_envelopes(const Envelope& upper, const Envelope& lower, double xi0_ref) {
  if (!upper.grid().same_as(lower.grid())) throw GridMismatch("photon pair sampled on different grids");
  const double ref = xi0_ref > 0.0 ? xi0_ref : std::sqrt(2.0) * upper.rms_width();
  return SpectralPair{to_spectrum(upper), to_spectrum(lower), ref};
}

cplx fourier_moment(std::span<const cplx> f, double k_min, double k_step, double dxi) {
  const cplx step = std::polar(1.0, k_step * dxi);
  cplx z{};
  cplx sum{0.0, 0.0};
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j % kReseedEvery == 0) {
      z = std::polar(1.0, (k_min + static_cast<double>(j) * k_step) * dxi);
    }
    sum += f[j] * z;
    z *= step;
  }
  return sum * k_step;
}

SpectralEvaluator::SpectralEvaluator(const SpectralPair& pair, const DetectorModel& detector)
    : k_min_(pair.beta.k_min), k_step_(pair.beta.k_step), k0_(pair.beta.k0) {
  if (!pair.beta.same_grid(pair.gamma)) throw GridMismatch("beta and gamma live on different k grids");
  if (detector.eta < 0.0) throw std::invalid_argument("detector eta must be non-negative");
  const auto w = window_weights(pair.beta, detector.eta, pair.xi0_ref);
  const std::size_t n = w.size();
  w_beta2_.resize(n);
  w_gamma2_.resize(n);
  w_cross_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx b = pair.beta.samples[j];
    const cplx g = pair.gamma.samples[j];
    w_beta2_[j] = w[j] * std::norm(b);
    w_gamma2_[j] = w[j] * std::norm(g);
    w_cross_[j] = w[j] * b * std::conj(g);
    beta_moment_ += w_beta2_[j].real();
    gamma_moment_ += w_gamma2_[j].real();
  }
  beta_moment_ *= k_step_;
  gamma_moment_ *= k_step_;
}

SpectralEvaluator::Moments SpectralEvaluator::moments(double dxi) const {
  const cplx step = std::polar(1.0, k_step_ * dxi);
  cplx z{};
  Moments m{};
  for (std::size_t j = 0; j < w_cross_.size(); ++j) {
    if (j % kReseedEvery == 0) z = std::polar(1.0, (k_min_ + static_cast<double>(j) * k_step_) * dxi);
    const cplx zc = std::conj(z);
    m.beta2 += w_beta2_[j] * z;
    m.gamma2 += w_gamma2_[j] * z;
    m.cross_plus += w_cross_[j] * z;
    m.cross_minus += w_cross_[j] * zc;
    z *= step;
  }
  m.beta2 *= k_step_;
  m.gamma2 *= k_step_;
  m.cross_plus *= k_step_;
  m.cross_minus *= k_step_;
  return m;
}

std::vector<SpectralEvaluator::Moments> SpectralEvaluator::moments_sweep(std::span<const double> dxis) const {
  const std::size_t n = w_cross_.size();
  const double h = 2.0 * std::numbers::pi / (static_cast<double>(n) * k_step_);
  std::vector<long long> lattice(dxis.size());
  bool on_lattice = dxis.size() > kMinLatticeSweep;
  for (std::size_t i = 0; i < dxis.size() && on_lattice; ++i) {
    lattice[i] = std::llround(dxis[i] / h);
    on_lattice = std::abs(dxis[i] - static_cast<double>(lattice[i]) * h) <= kLatticeTolerance * h &&
                 std::llabs(lattice[i]) < static_cast<long long>(n / 2);
  }
  std::vector<Moments> out(dxis.size());
  if (!on_lattice) {
    for (std::size_t i = 0; i < dxis.size(); ++i) out[i] = moments(dxis[i]);
    return out;
  }

  // sum_j f_j exp(i k_j m h) = exp(i k_min m h) * backward_dft(f)[m mod N]
  auto transformed = [](const std::vector<cplx>& f) {
    std::vector<cplx> buf = f;
    detail::dft_backward(buf);
    return buf;
  };
  const auto beta2 = transformed(w_beta2_);
  const auto gamma2 = transformed(w_gamma2_);
  const auto cross = transformed(w_cross_);
  const auto wrap = [n](long long m) {
    const long long nn = static_cast<long long>(n);
    return static_cast<std::size_t>(((m % nn) + nn) % nn);
  };
  for (std::size_t i = 0; i < dxis.size(); ++i) {
    const long long m = lattice[i];
    const double shift = k_min_ * static_cast<double>(m) * h;
    const cplx plus = std::polar(k_step_, shift);
    const cplx minus = std::polar(k_step_, -shift);
    out[i].beta2 = plus * beta2[wrap(m)];
    out[i].gamma2 = plus * gamma2[wrap(m)];
    out[i].cross_plus = plus * cross[wrap(m)];
    out[i].cross_minus = minus * cross[wrap(-m)];
  }
  return out;
}

HomSpectral SpectralEvaluator::hom_from(const Moments& m, double dxi) const {
  const cplx carrier = std::polar(1.0, k0_ * dxi);
  // integral w beta* gamma e^{+i phi} = e^{i k0 dxi} conj(sum w beta gamma* e^{-ik dxi})
  const cplx overlap = carrier * std::conj(m.cross_minus);
  HomSpectral r;
  r.I_am = 0.5 * beta_moment_ * gamma_moment_;
  r.I_cm = 0.5 * std::norm(overlap);
  r.P_UL_B = r.I_am - r.I_cm;
  r.P_UU_B = 0.5 * (r.I_am + r.I_cm);
  return r;
}

MzSpectral SpectralEvaluator::mz_from(const Moments& m, double dxi) const {
  const cplx carrier = std::polar(1.0, k0_ * dxi);
  // integral w |beta|^2 (2 + e^{i phi} + e^{-i phi}) = 2 S_beta + 2 Re(e^{i k0 dxi} M_beta);
  // both integrands are non-negative, so only roundoff can push them below 0
  const double upper = std::max(0.0, 2.0 * beta_moment_ + 2.0 * (carrier * m.beta2).real());
  const double lower = std::max(0.0, 2.0 * gamma_moment_ - 2.0 * (carrier * m.gamma2).real());
  // integral w beta gamma* (e^{i phi} - e^{-i phi}); its partner factor is the conjugate
  const cplx cross = carrier * m.cross_plus - std::conj(carrier) * m.cross_minus;
  MzSpectral r;
  r.I_a = upper * lower / 16.0;
  r.I_c = std::norm(cross) / 16.0;
  r.P_UU_D = r.I_a + r.I_c;
  return r;
}

SinglePhotonProbs SpectralEvaluator::single_photon_from(const Moments& m, double dxi) const {
  const double fringe = (std::polar(1.0, k0_ * dxi) * m.beta2).real();
  return {0.5 * (beta_moment_ + fringe), 0.5 * (beta_moment_ - fringe)};
}

HomSpectral SpectralEvaluator::hom(double dxi) const { return hom_from(moments(dxi), dxi); }

MzSpectral SpectralEvaluator::mz(double dxi) const { return mz_from(moments(dxi), dxi); }

SinglePhotonProbs SpectralEvaluator::single_photon(double dxi) const {
  return single_photon_from(moments(dxi), dxi);
}

std::vector<HomSpectral> SpectralEvaluator::hom_sweep(std::span<const double> dxis) const {
  const auto m = moments_sweep(dxis);
  std::vector<HomSpectral> out(dxis.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = hom_from(m[i], dxis[i]);
  return out;
}

std::vector<MzSpectral> SpectralEvaluator::mz_sweep(std::span<const double> dxis) const {
  const auto m = moments_sweep(dxis);
  std::vector<MzSpectral> out(dxis.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mz_from(m[i], dxis[i]);
  return out;
}

std::vector<SinglePhotonProbs> SpectralEvaluator::single_photon_sweep(std::span<const double> dxis) const {
  const auto m = moments_sweep(dxis);
  std::vector<SinglePhotonProbs> out(dxis.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = single_photon_from(m[i], dxis[i]);
  return out;
}

HomSpectral hom_spectral(const SpectralPair& p, const DetectorModel& w, double dxi) {
  return SpectralEvaluator(p, w).hom(dxi);
}

MzSpectral mz_spectral(const SpectralPair& p, const DetectorModel& w, double dxi) {
  return SpectralEvaluator(p, w).mz(dxi);
}

SinglePhotonProbs single_photon_spectral(const SpectralPair& p, const DetectorModel& w, double dxi) {
  return SpectralEvaluator(p, w).single_photon(dxi);
}

ChirpedClosedForm chirped_closed_form(const ChirpedParams& c, double dxi) {
  const double k2 = c.kappa * c.kappa;
  const double a = 1.0 + c.eta + c.eta * k2;
  const double b = (1.0 + c.eta) * (1.0 + c.eta) + c.eta * c.eta * k2;
  const double x2 = dxi * dxi / (c.xi0 * c.xi0);
  const double cos2 = std::cos(2.0 * c.k0 * dxi);
  const double cross_norm = std::sqrt((1.0 + k2) * b);

  ChirpedClosedForm r;
  r.I_am = 1.0 / (2.0 * a);
  r.I_cm = std::exp(-a / (2.0 * b) * x2) / (2.0 * cross_norm);
  r.I_ad = 1.0 / (4.0 * a) - std::exp(-(1.0 + k2) * x2 / (2.0 * a)) * (1.0 + cos2) / (8.0 * a);
  r.I_cd = std::exp(-a * x2 / (2.0 * b)) * (1.0 - cos2) / (8.0 * cross_norm);
  r.P_UL_B = r.I_am - r.I_cm;
  r.P_UU_D = r.I_ad + r.I_cd;
  return r;
}

SinglePhotonProbs chirped_single_photon(const ChirpedParams& c, double dxi) {
  const double k2 = c.kappa * c.kappa;
  const double a = 1.0 + c.eta + c.eta * k2;
  const double detected = 1.0 / std::sqrt(a);
  const double fringe = std::exp(-(1.0 + k2) * dxi * dxi / (4.0 * a * c.xi0 * c.xi0)) * std::cos(c.k0 * dxi);
  return {0.5 * detected * (1.0 + fringe), 0.5 * detected * (1.0 - fringe)};
}

OrthogonalPattern orthogonal_pair_pattern(double lambda, double xi0, double k0, double dxi1, double dxi2) {
  if (!(lambda > 0.0)) throw std::invalid_argument("orthogonal pair needs lambda > 0");
  const double norm = std::sqrt(2.0 / (1.0 - std::exp(-lambda * lambda * xi0 * xi0)));
  const double envelope = std::exp(-(dxi1 * dxi1 + std::pow(xi0, 4) * lambda * lambda) / (4.0 * xi0 * xi0));
  OrthogonalPattern r;
  r.C = norm * envelope * std::sin(dxi1 * lambda / 2.0);
  r.amplitude = 0.25 * (1.0 + r.C * r.C);
  const double s = std::sin(k0 * dxi2);
  r.P_UU = r.amplitude * s * s;
  return r;
}

SmallDelay small_delay_limit(const SpectralPair& p, double dxi2) {
  if (!p.beta.same_grid(p.gamma)) throw GridMismatch("beta and gamma live on different k grids");
  cplx overlap{0.0, 0.0};
  for (std::size_t j = 0; j < p.beta.size(); ++j) overlap += p.beta.samples[j] * std::conj(p.gamma.samples[j]);
  overlap *= p.beta.k_step;
  const double s = std::sin(p.beta.k0 * dxi2);
  SmallDelay r;
  r.I_a = 0.25 * s * s;
  r.I_c = 0.25 * std::norm(overlap) * s * s;
  r.P_UU = r.I_a + r.I_c;
  return r;
}

}  // namespace twinterf
