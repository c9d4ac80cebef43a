#pragma once

#include <span>
#include <vector>

#include "twinterf/envelope.hpp"
#include "twinterf/modeengine.hpp"

namespace twinterf {

/// Gaussian spectral window w(k) = exp(-eta xi0^2 k^2) of a band-limited detector.
struct DetectorModel {
  double eta = 0.0;
  DetectorResponse response = DetectorResponse::number_resolving;
};

/// Spectra of the photons entering U (beta) and L (gamma). xi0_ref is the
/// pulse length that scales the detector window.
struct SpectralPair {
  Spectrum beta;
  Spectrum gamma;
  double xi0_ref = 1.0;

  /// Builds both spectra. A non-positive xi0_ref is replaced by sqrt(2) times
  /// the RMS width of |E_U|^2, which is xi0 for a Gaussian.
  static SpectralPair from_envelopes(const Envelope& upper, const Envelope& lower, double xi0_ref = 0.0);
};

/// Hong-Ou-Mandel quantities behind the first splitter.
struct HomSpectral {
  double I_am = 0.0;
  double I_cm = 0.0;
  double P_UL_B = 0.0;
  double P_UU_B = 0.0;
};

/// Two-photon Mach-Zehnder quantities at the detectors.
struct MzSpectral {
  double I_a = 0.0;
  double I_c = 0.0;
  double P_UU_D = 0.0;
};

struct ChirpedParams {
  double xi0 = 1.0;
  double k0 = 0.0;
  double kappa = 0.0;
  double eta = 0.0;

  /// Coherence length over pulse length, 1 / sqrt(1 + kappa^2).
  double delta_ratio() const;
};

struct ChirpedClosedForm {
  double I_am = 0.0;
  double I_cm = 0.0;
  double I_ad = 0.0;
  double I_cd = 0.0;
  double P_UL_B = 0.0;
  double P_UU_D = 0.0;
};

struct OrthogonalPattern {
  double C = 0.0;
  double P_UU = 0.0;
  /// Half-period oscillation amplitude (1 + C^2) / 4.
  double amplitude = 0.0;
};

struct SmallDelay {
  double I_a = 0.0;
  double I_c = 0.0;
  double P_UU = 0.0;
};

/// Trapezoid approximation of integral f(k) exp(i k dxi) dk on a periodic
/// uniform k grid.
cplx fourier_moment(std::span<const cplx> f, double k_min, double k_step, double dxi);

/// Precomputes the weighted spectral products of one pair so that a delay
/// sweep costs O(N) per point.
class SpectralEvaluator {
 public:
  SpectralEvaluator(const SpectralPair& pair, const DetectorModel& detector);

  HomSpectral hom(double dxi) const;
  MzSpectral mz(double dxi) const;
  /// Single photon in U (spectrum beta) through the interferometer.
  SinglePhotonProbs single_photon(double dxi) const;

  /// Whole sweeps. Delays lying on the xi lattice of the underlying grid are
  /// evaluated with one inverse DFT per spectral product instead of O(N)
  /// work per point.
  std::vector<HomSpectral> hom_sweep(std::span<const double> dxis) const;
  std::vector<MzSpectral> mz_sweep(std::span<const double> dxis) const;
  std::vector<SinglePhotonProbs> single_photon_sweep(std::span<const double> dxis) const;

 private:
  struct Moments {
    cplx beta2;        // sum w |beta|^2 e^{+ik dxi} dk
    cplx gamma2;       // sum w |gamma|^2 e^{+ik dxi} dk
    cplx cross_plus;   // sum w beta gamma* e^{+ik dxi} dk
    cplx cross_minus;  // sum w beta gamma* e^{-ik dxi} dk
  };
  Moments moments(double dxi) const;
  std::vector<Moments> moments_sweep(std::span<const double> dxis) const;
  HomSpectral hom_from(const Moments& m, double dxi) const;
  MzSpectral mz_from(const Moments& m, double dxi) const;
  SinglePhotonProbs single_photon_from(const Moments& m, double dxi) const;

  double k_min_, k_step_, k0_;
  std::vector<cplx> w_beta2_;   // w |beta|^2
  std::vector<cplx> w_gamma2_;  // w |gamma|^2
  std::vector<cplx> w_cross_;   // w beta gamma*
  double beta_moment_ = 0.0;
  double gamma_moment_ = 0.0;
};

HomSpectral hom_spectral(const SpectralPair& p, const DetectorModel& w, double dxi);
MzSpectral mz_spectral(const SpectralPair& p, const DetectorModel& w, double dxi);
SinglePhotonProbs single_photon_spectral(const SpectralPair& p, const DetectorModel& w, double dxi);

/// Closed forms for the oppositely chirped Gaussian pair gamma = beta*.
ChirpedClosedForm chirped_closed_form(const ChirpedParams& c, double dxi);
/// Single-photon pattern of one chirped Gaussian seen through the window.
SinglePhotonProbs chirped_single_photon(const ChirpedParams& c, double dxi);

/// Even/odd Gaussian pair with flat detector; dxi1 delays the even pulse,
/// dxi2 is the short second delay (zeta = k0 dxi2).
OrthogonalPattern orthogonal_pair_pattern(double lambda, double xi0, double k0, double dxi1, double dxi2);

/// Second delay short against the coherence length, flat detector.
SmallDelay small_delay_limit(const SpectralPair& p, double dxi2);

}  // namespace twinterf
