#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "twinterf/envelope.hpp"

namespace twinterf {

/// Second photon (or delayed copy) written against a reference mode E1:
/// E2 = alpha1 E1 + alpha3 E3 with E3 orthogonal to E1 and alpha3 >= 0.
struct ModeDecomposition {
  cplx alpha1{1.0, 0.0};
  double alpha3 = 0.0;
  /// E3; empty when alpha3 is below the degeneracy threshold.
  std::optional<Envelope> residual;

  /// Decomposition carrying only the correlation, alpha3 = sqrt(1 - |alpha1|^2).
  static ModeDecomposition from_alpha1(cplx alpha1);
};

/// Single-mode photon-number state sum_n a_n |n>.
struct FockState1Mode {
  std::vector<cplx> coeffs;

  static FockState1Mode fock(int n);
  static FockState1Mode vacuum() { return fock(0); }
  /// Coherent state with eigenvalue c, truncated at n_max and renormalized.
  static FockState1Mode coherent(cplx c, int n_max);

  double norm_squared() const;
  double mean_photon_number() const;
};

struct SinglePhotonProbs {
  double P_U = 0.0;
  double P_L = 0.0;
};

/// Two-photon outcome probabilities: both in U, both in L, one in each.
struct PairProbs {
  double P_UU = 0.0;
  double P_LL = 0.0;
  double P_UL = 0.0;

  double total() const { return P_UU + P_LL + P_UL; }
};

enum class DetectorResponse { number_resolving, single_click };

struct PhotonCounts {
  double I_U = 0.0;
  double I_L = 0.0;
};

/// alpha1 = <e2, e1>; alpha3 = +sqrt(1 - |alpha1|^2); E3 = (e2 - alpha1 e1) / alpha3.
ModeDecomposition decompose(const Envelope& e1, const Envelope& e2);

/// Correlation of a transform-limited Gaussian with its copy delayed by dxi:
/// exp(-dxi^2 / 4 xi0^2 + i k0 dxi).
cplx gaussian_alpha1(double xi0, double k0, double dxi);

/// One photon entering U through a balanced Mach-Zehnder.
SinglePhotonProbs single_photon_probs(cplx alpha1);

/// Two photons, one per input channel, detected right after the first splitter.
PairProbs hom_probs(const ModeDecomposition& d);

/// Two identical photons, one per channel, through the full interferometer.
PairProbs two_identical_mz_probs(cplx alpha1);

/// Expected detector output in channel U for a two-photon outcome triple.
double detector_response(const PairProbs& probs, DetectorResponse response);

/// Delay DL1 ahead of the first splitter sets the decomposition; a short
/// second delay between the splitters adds the phase zeta = k0 dxi2.
/// Assumes dxi2 is far below the coherence length.
PairProbs two_delay_probs(const ModeDecomposition& d, double zeta);

/// Probability of all n photons in U behind a fictitious n-photon splitter
/// followed by the delay line and a balanced second splitter.
double n_photon_probs(int n, cplx alpha1, int sign);

/// Photon-number expectations in U and L for an arbitrary single-mode state
/// sent into U.
PhotonCounts classical_count(const FockState1Mode& state, cplx alpha1);

/// Coincidence probability for the n = 2 Fock state in U with |alpha1| = 1.
double fock2_coincidence(double delta_xi, double k0);

/// <Psi| exp(-i phi) alpha f^dag + exp(i phi) alpha* f |Psi>, with alpha the
/// coherent eigenvalue of the reference in channel L.
double homodyne_signal(const FockState1Mode& state, cplx alpha, double phi);

}  // namespace twinterf
