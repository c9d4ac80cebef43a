#include "twinterf/modeengine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twinterf/errors.hpp"

namespace twinterf {
namespace {

// Below this alpha3 the residual mode is numerically meaningless.
constexpr double kDegenerateAlpha3 = 1e-8;

double alpha3_of(cplx alpha1) { return std::sqrt(std::max(0.0, 1.0 - std::norm(alpha1))); }

}  // namespace

ModeDecomposition ModeDecomposition::from_alpha1(cplx alpha1) {
  double a3 = alpha3_of(alpha1);
  if (a3 < kDegenerateAlpha3) a3 = 0.0;
  return ModeDecomposition{alpha1, a3, std::nullopt};
}

FockState1Mode FockState1Mode::fock(int n) {
  if (n < 0) throw std::invalid_argument("photon number must be non-negative");
  FockState1Mode s;
  s.coeffs.assign(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
  s.coeffs.back() = 1.0;
  return s;
}

FockState1Mode FockState1Mode::coherent(cplx c, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  FockState1Mode s;
  s.coeffs.resize(static_cast<std::size_t>(n_max) + 1);
  cplx term{1.0, 0.0};  // c^n / sqrt(n!)
  for (int n = 0; n <= n_max; ++n) {
    s.coeffs[static_cast<std::size_t>(n)] = term;
    term *= c / std::sqrt(static_cast<double>(n + 1));
  }
  const double scale = 1.0 / std::sqrt(s.norm_squared());
  for (auto& a : s.coeffs) a *= scale;
  return s;
}

double FockState1Mode::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : coeffs) sum += std::norm(a);
  return sum;
}

double FockState1Mode::mean_photon_number() const {
  double sum = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) sum += static_cast<double>(n) * std::norm(coeffs[n]);
  return sum;
}

ModeDecomposition decompose(const Envelope& e1, const Envelope& e2) {
  const cplx a1 = inner_product(e2, e1);
  ModeDecomposition d = ModeDecomposition::from_alpha1(a1);
  if (d.alpha3 == 0.0) return d;

  const auto s1 = e1.samples();
  const auto s2 = e2.samples();
  std::vector<cplx> r(s2.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (s2[i] - a1 * s1[i]) / d.alpha3;
  d.residual = normalize(Envelope(e2.grid(), std::move(r), e2.k0(), "residual"));
  return d;
}

cplx gaussian_alpha1(double xi0, double k0, double dxi) {
  return std::polar(std::exp(-dxi * dxi / (4.0 * xi0 * xi0)), k0 * dxi);
}

SinglePhotonProbs single_photon_probs(cplx alpha1) {
  const double re = alpha1.real();
  return {0.5 + 0.5 * re, 0.5 - 0.5 * re};
}

PairProbs hom_probs(const ModeDecomposition& d) {
  const double a1 = std::norm(d.alpha1);
  const double a3 = d.alpha3 * d.alpha3;
  const double same = 0.5 * a1 + 0.25 * a3;
  return {same, same, 0.5 * a3};
}

PairProbs two_identical_mz_probs(cplx alpha1) {
  const double re2 = (alpha1 * alpha1).real();
  const double same = 0.25 - 0.25 * re2;
  return {same, same, 0.5 + 0.5 * re2};
}

double detector_response(const PairProbs& probs, DetectorResponse response) {
  switch (response) {
    case DetectorResponse::number_resolving:
      return 2.0 * probs.P_UU + probs.P_UL;
    case DetectorResponse::single_click:
      return probs.P_UU + probs.P_UL;
  }
  return 0.0;
}

PairProbs two_delay_probs(const ModeDecomposition& d, double zeta) {
  const double a1 = std::norm(d.alpha1);
  const double a3 = d.alpha3 * d.alpha3;
  const double s = std::sin(zeta);
  const double c = std::cos(zeta);
  const double same = 0.25 * (1.0 + a1) * s * s;
  return {same, same, 0.5 * ((1.0 + a1) * c * c + a3)};
}

double n_photon_probs(int n, cplx alpha1, int sign) {
  if (n < 1) throw InvalidN("n-photon splitter needs n >= 1, got " + std::to_string(n));
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  cplx an{1.0, 0.0};
  for (int i = 0; i < n; ++i) an *= alpha1;
  return std::ldexp(2.0 + sign * 2.0 * an.real(), -(n + 1));
}

PhotonCounts classical_count(const FockState1Mode& state, cplx alpha1) {
  const auto p = single_photon_probs(alpha1);
  const double nbar = state.mean_photon_number();
  return {p.P_U * nbar, p.P_L * nbar};
}

double fock2_coincidence(double delta_xi, double k0) { return 0.25 * (1.0 - std::cos(2.0 * k0 * delta_xi)); }

double homodyne_signal(const FockState1Mode& state, cplx alpha, double phi) {
  // <Psi| f^dag |Psi> = sum_n a*_{n+1} sqrt(n+1) a_n
  cplx raising{0.0, 0.0};
  const auto& a = state.coeffs;
  for (std::size_t n = 0; n + 1 < a.size(); ++n) {
    raising += std::conj(a[n + 1]) * std::sqrt(static_cast<double>(n + 1)) * a[n];
  }
  return 2.0 * (std::polar(1.0, -phi) * alpha * raising).real();
}

}  // namespace twinterf
