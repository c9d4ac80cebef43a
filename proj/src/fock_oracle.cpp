#include "twinterf/fock_oracle.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "twinterf/errors.hpp"

namespace twinterf::oracle {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cplx ipow(cplx base, int exponent) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

int total(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

// (sum_j row_j f^dag_j)^power via the multinomial theorem.
CreationPolynomial linear_form_power(const std::array<cplx, kModes>& row, int power) {
  CreationPolynomial out;
  Occupation k{};
  for (k[0] = 0; k[0] <= power; ++k[0]) {
    for (k[1] = 0; k[0] + k[1] <= power; ++k[1]) {
      for (k[2] = 0; k[0] + k[1] + k[2] <= power; ++k[2]) {
        k[3] = power - k[0] - k[1] - k[2];
        cplx c = factorial(power);
        for (std::size_t j = 0; j < kModes; ++j) {
          c *= ipow(row[j], k[j]) / factorial(k[j]);
        }
        if (c != cplx{0.0, 0.0}) out.add(k, c);
      }
    }
  }
  return out;
}

ModeMap identity_map() {
  ModeMap m{};
  for (std::size_t i = 0; i < kModes; ++i) m[i][i] = 1.0;
  return m;
}

void check_photon_cap(int n) {
  if (n > kMaxPhotons) {
    throw TooManyPhotons("oracle is capped at " + std::to_string(kMaxPhotons) + " photons, got " +
                         std::to_string(n));
  }
}

CreationPolynomial power_of_mode(Mode m, int n, cplx coeff = 1.0) {
  Occupation occ{};
  occ[m] = n;
  return CreationPolynomial::monomial(occ, coeff);
}

}  // namespace

CreationPolynomial CreationPolynomial::monomial(const Occupation& occ, cplx coeff) {
  CreationPolynomial p;
  p.add(occ, coeff);
  return p;
}

CreationPolynomial& CreationPolynomial::add(const Occupation& occ, cplx coeff) {
  for (int n : occ) {
    if (n < 0) throw std::invalid_argument("negative occupation");
  }
  terms_[occ] += coeff;
  return *this;
}

CreationPolynomial CreationPolynomial::operator*(const CreationPolynomial& rhs) const {
  CreationPolynomial out;
  for (const auto& [occ_a, ca] : terms_) {
    for (const auto& [occ_b, cb] : rhs.terms_) {
      Occupation occ{};
      for (std::size_t i = 0; i < kModes; ++i) occ[i] = occ_a[i] + occ_b[i];
      out.terms_[occ] += ca * cb;
    }
  }
  return out;
}

int CreationPolynomial::photon_number() const {
  if (terms_.empty()) return 0;
  const int n = total(terms_.begin()->first);
  for (const auto& [occ, c] : terms_) {
    if (total(occ) != n) throw std::invalid_argument("state mixes different photon numbers");
  }
  return n;
}

CreationPolynomial CreationPolynomial::substitute(const ModeMap& map) const {
  CreationPolynomial out;
  for (const auto& [occ, coeff] : terms_) {
    CreationPolynomial term = CreationPolynomial::monomial(Occupation{}, coeff);
    for (std::size_t i = 0; i < kModes; ++i) {
      if (occ[i] > 0) term = term * linear_form_power(map[i], occ[i]);
    }
    for (const auto& [o, c] : term.terms_) out.terms_[o] += c;
  }
  return out;
}

double OutcomeDistribution::prob(int n_u, int n_l) const {
  const auto it = probs.find({n_u, n_l});
  return it == probs.end() ? 0.0 : it->second;
}

double OutcomeDistribution::total() const {
  double s = 0.0;
  for (const auto& [k, p] : probs) s += p;
  return s;
}

double OutcomeDistribution::mean_u() const {
  double s = 0.0;
  for (const auto& [k, p] : probs) s += k.first * p;
  return s;
}

double OutcomeDistribution::mean_l() const {
  double s = 0.0;
  for (const auto& [k, p] : probs) s += k.second * p;
  return s;
}

OutcomeDistribution outcome_distribution(const CreationPolynomial& state) {
  // prod (f^dag_i)^{n_i} |0> = sqrt(prod n_i!) |n_1 ... n_4>
  OutcomeDistribution dist;
  for (const auto& [occ, c] : state.terms()) {
    double weight = 1.0;
    for (int n : occ) weight *= factorial(n);
    const double p = std::norm(c) * weight;
    if (p == 0.0) continue;
    dist.probs[{occ[U1] + occ[U3], occ[L1] + occ[L3]}] += p;
  }
  return dist;
}

ModeMap beam_splitter() {
  const double r = 1.0 / std::sqrt(2.0);
  ModeMap m{};
  m[U1][U1] = r;
  m[U1][L1] = r;
  m[L1][U1] = r;
  m[L1][L1] = -r;
  m[U3][U3] = r;
  m[U3][L3] = r;
  m[L3][U3] = r;
  m[L3][L3] = -r;
  return m;
}

ModeMap decomposing_delay(const ModeDecomposition& d) {
  ModeMap m = identity_map();
  m[L1][L1] = d.alpha1;
  m[L1][L3] = d.alpha3;
  m[L3][L3] = std::numeric_limits<double>::quiet_NaN();
  return m;
}

ModeMap phase_delay(double zeta) {
  ModeMap m = identity_map();
  m[L1][L1] = std::polar(1.0, zeta);
  m[L3][L3] = std::polar(1.0, zeta);
  return m;
}

OutcomeDistribution fock_splitter_oracle(const OracleInput& input, const ModeDecomposition& d) {
  check_photon_cap(input.photons.photon_number());
  CreationPolynomial state = input.photons;
  for (const Stage& stage : input.stages) {
    switch (stage.kind) {
      case Stage::Kind::splitter:
        state = state.substitute(beam_splitter());
        break;
      case Stage::Kind::phase:
        state = state.substitute(phase_delay(stage.zeta));
        break;
      case Stage::Kind::delay:
        for (const auto& [occ, c] : state.terms()) {
          if (occ[L3] > 0 && c != cplx{0.0, 0.0}) {
            throw std::logic_error("delay line applied while the residual mode in L is occupied");
          }
        }
        state = state.substitute(decomposing_delay(d));
        break;
    }
  }
  return outcome_distribution(state);
}

OracleInput single_photon_mz() {
  return {power_of_mode(U1, 1), {{Stage::Kind::splitter}, {Stage::Kind::delay}, {Stage::Kind::splitter}}};
}

OracleInput hom_first_splitter() {
  return {power_of_mode(U1, 1) * power_of_mode(L1, 1), {{Stage::Kind::delay}, {Stage::Kind::splitter}}};
}

OracleInput identical_pair_mz() {
  return {power_of_mode(U1, 1) * power_of_mode(L1, 1),
          {{Stage::Kind::splitter}, {Stage::Kind::delay}, {Stage::Kind::splitter}}};
}

OracleInput two_delay_mz(double zeta) {
  return {power_of_mode(U1, 1) * power_of_mode(L1, 1),
          {{Stage::Kind::delay}, {Stage::Kind::splitter}, {Stage::Kind::phase, zeta}, {Stage::Kind::splitter}}};
}

OracleInput n_photon_splitter(int n, int sign) {
  if (n < 1) throw InvalidN("n-photon splitter needs n >= 1");
  const double c = 1.0 / std::sqrt(2.0 * factorial(n));
  CreationPolynomial p = power_of_mode(U1, n, c);
  Occupation occ{};
  occ[L1] = n;
  p.add(occ, sign * c);
  return {p, {{Stage::Kind::delay}, {Stage::Kind::splitter}}};
}

OracleInput fock_state_mz(int n) {
  return {power_of_mode(U1, n, 1.0 / std::sqrt(factorial(n))),
          {{Stage::Kind::splitter}, {Stage::Kind::delay}, {Stage::Kind::splitter}}};
}

}  // namespace twinterf::oracle
