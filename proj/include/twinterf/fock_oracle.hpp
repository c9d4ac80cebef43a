#pragma once

#include <array>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "twinterf/modeengine.hpp"

namespace twinterf::oracle {

// Brute-force Fock-space propagation over the four orthonormal modes
// {E1, E3} x {U, L}. Creation operators commute, so a state is a
// commutative polynomial in f^dag applied to the vacuum; each optical
// element is a linear substitution f^dag_i -> sum_j M_ij f^dag_j.

enum Mode : std::size_t { U1 = 0, U3 = 1, L1 = 2, L3 = 3 };
inline constexpr std::size_t kModes = 4;
inline constexpr int kMaxPhotons = 8;

using Occupation = std::array<int, kModes>;
using ModeMap = std::array<std::array<cplx, kModes>, kModes>;

class CreationPolynomial {
 public:
  CreationPolynomial() = default;

  /// coeff * prod_i (f^dag_i)^{occ_i}, not normalized.
  static CreationPolynomial monomial(const Occupation& occ, cplx coeff = 1.0);

  CreationPolynomial& add(const Occupation& occ, cplx coeff);
  CreationPolynomial operator*(const CreationPolynomial& rhs) const;

  /// Total photon number; throws if the polynomial is not homogeneous.
  int photon_number() const;
  CreationPolynomial substitute(const ModeMap& map) const;

  const std::map<Occupation, cplx>& terms() const { return terms_; }

 private:
  std::map<Occupation, cplx> terms_;
};

/// Outcome probabilities keyed by (photons in U, photons in L).
struct OutcomeDistribution {
  std::map<std::pair<int, int>, double> probs;

  double prob(int n_u, int n_l) const;
  double total() const;
  double mean_u() const;
  double mean_l() const;
};

OutcomeDistribution outcome_distribution(const CreationPolynomial& state);

/// Balanced splitter: U -> (U + L)/sqrt2, L -> (U - L)/sqrt2, per spatial mode.
ModeMap beam_splitter();
/// Delay line in L replacing E1 by alpha1 E1 + alpha3 E3. Its action on an
/// occupied E3 is undefined, so applying it then is an error.
ModeMap decomposing_delay(const ModeDecomposition& d);
/// Short delay in L acting as a pure phase exp(i zeta) on every mode.
ModeMap phase_delay(double zeta);

struct Stage {
  enum class Kind { splitter, delay, phase };
  Kind kind = Kind::splitter;
  double zeta = 0.0;
};

struct OracleInput {
  CreationPolynomial photons;
  std::vector<Stage> stages;
};

/// Propagates the input through the stages and returns exact outcome
/// probabilities. At most kMaxPhotons photons.
OutcomeDistribution fock_splitter_oracle(const OracleInput& input, const ModeDecomposition& d);

// Canonical set-ups, each matching one closed form of the mode engine.
OracleInput single_photon_mz();
OracleInput hom_first_splitter();
OracleInput identical_pair_mz();
OracleInput two_delay_mz(double zeta);
/// State (f_U^dag^n +- f_L^dag^n)/sqrt(2 n!) behind a fictitious n-photon splitter.
OracleInput n_photon_splitter(int n, int sign);
/// |n> sent into U of the full interferometer.
OracleInput fock_state_mz(int n);

}  // namespace twinterf::oracle
