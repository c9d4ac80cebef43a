#include "twinterf/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fourier.hpp"
#include "twinterf/errors.hpp"

namespace twinterf {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinSamples = 16;
constexpr double kZeroNorm = 1e-30;
constexpr double kMaxLeakedEnergy = 1e-6;

void check_same_grid(const Envelope& a, const Envelope& b) {
  if (!a.grid().same_as(b.grid()) || std::abs(a.k0() - b.k0()) > 1e-12 * std::max(1.0, std::abs(a.k0()))) {
    throw GridMismatch("envelopes '" + a.label() + "' and '" + b.label() + "' are sampled differently");
  }
}

// Index offset so that k_min = -floor(N/2) * k_step.
std::size_t k_origin(std::size_t n) { return n / 2; }

}  // namespace

Grid Grid::centered(double half_width, std::size_t size) {
  if (size < kMinSamples || !(half_width > 0.0)) {
    throw std::invalid_argument("grid needs at least 16 samples and a positive width");
  }
  return Grid{-half_width, 2.0 * half_width / static_cast<double>(size), size};
}

Grid Grid::for_pulse(double xi0, std::size_t size, double half_width_in_xi0) {
  return centered(half_width_in_xi0 * xi0, size);
}

double Grid::k_step() const { return 2.0 * kPi / width(); }

bool Grid::same_as(const Grid& other) const {
  const double tol = 1e-12 * std::max(width(), other.width());
  return size == other.size && std::abs(xi_step - other.xi_step) <= 1e-12 * xi_step &&
         std::abs(xi_min - other.xi_min) <= tol;
}

Envelope::Envelope(Grid grid, std::vector<cplx> samples, double k0, std::string label)
    : grid_(grid), samples_(std::move(samples)), k0_(k0), label_(std::move(label)) {
  if (grid_.size < kMinSamples || !(grid_.xi_step > 0.0)) {
    throw std::invalid_argument("envelope grid needs at least 16 samples and xi_step > 0");
  }
  if (samples_.size() != grid_.size) {
    std::ostringstream msg;
    msg << "envelope has " << samples_.size() << " samples but its grid has " << grid_.size;
    throw std::invalid_argument(msg.str());
  }
}

double Envelope::norm_squared() const {
  double sum = 0.0;
  for (const auto& s : samples_) sum += std::norm(s);
  return sum * grid_.xi_step;
}

double Envelope::rms_width() const {
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double p = std::norm(samples_[i]);
    const double x = grid_.at(i);
    w += p;
    m1 += p * x;
    m2 += p * x * x;
  }
  if (w <= 0.0) return 0.0;
  const double mean = m1 / w;
  return std::sqrt(std::max(0.0, m2 / w - mean * mean));
}

bool Envelope::decays_at_edges(double tol) const {
  return std::abs(samples_.front()) < tol && std::abs(samples_.back()) < tol;
}

double Spectrum::norm_squared() const {
  double sum = 0.0;
  for (const auto& s : samples) sum += std::norm(s);
  return sum * k_step;
}

bool Spectrum::same_grid(const Spectrum& other) const {
  return samples.size() == other.samples.size() &&
         std::abs(k_step - other.k_step) <= 1e-12 * k_step &&
         std::abs(k_min - other.k_min) <= 1e-12 * std::abs(k_min) + 1e-300 &&
         std::abs(k0 - other.k0) <= 1e-12 * std::max(1.0, std::abs(k0));
}

Envelope normalize(const Envelope& e) {
  const double n2 = e.norm_squared();
  if (n2 < kZeroNorm) throw ZeroEnvelope("envelope '" + e.label() + "' has zero norm");
  const double scale = 1.0 / std::sqrt(n2);
  std::vector<cplx> out(e.samples().begin(), e.samples().end());
  for (auto& s : out) s *= scale;
  return Envelope(e.grid(), std::move(out), e.k0(), e.label());
}

cplx inner_product(const Envelope& a, const Envelope& b) {
  check_same_grid(a, b);
  const auto sa = a.samples();
  const auto sb = b.samples();
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < sa.size(); ++i) sum += sa[i] * std::conj(sb[i]);
  return sum * a.grid().xi_step;
}

Spectrum to_spectrum(const Envelope& e) {
  const Grid& g = e.grid();
  const std::size_t n = g.size;
  const double dk = g.k_step();
  const std::size_t origin = k_origin(n);
  const double k_min = -static_cast<double>(origin) * dk;

  // exp(-i k_min xi_step j) = exp(2 pi i origin j / N)
  std::vector<cplx> buf(e.samples().begin(), e.samples().end());
  for (std::size_t j = 0; j < n; ++j) {
    const double arg = 2.0 * kPi * static_cast<double>((origin * j) % n) / static_cast<double>(n);
    buf[j] *= std::polar(1.0, arg);
  }
  detail::dft_forward(buf);

  const double pref = g.xi_step / std::sqrt(2.0 * kPi);
  for (std::size_t m = 0; m < n; ++m) {
    const double k = k_min + static_cast<double>(m) * dk;
    buf[m] *= pref * std::polar(1.0, -k * g.xi_min);
  }
  return Spectrum{std::move(buf), k_min, dk, e.k0(), g.xi_min};
}

Envelope to_envelope(const Spectrum& s, std::string label) {
  const std::size_t n = s.samples.size();
  const std::size_t origin = k_origin(n);
  std::vector<cplx> buf(s.samples);
  for (std::size_t m = 0; m < n; ++m) buf[m] *= std::polar(1.0, s.k_at(m) * s.xi_min);
  detail::dft_backward(buf);
  const double pref = s.k_step / std::sqrt(2.0 * kPi);
  for (std::size_t j = 0; j < n; ++j) {
    const double arg = -2.0 * kPi * static_cast<double>((origin * j) % n) / static_cast<double>(n);
    buf[j] *= pref * std::polar(1.0, arg);
  }
  const double xi_step = 2.0 * kPi / (s.k_step * static_cast<double>(n));
  return Envelope(Grid{s.xi_min, xi_step, n}, std::move(buf), s.k0, std::move(label));
}

double energy_leaving_window(const Envelope& e, double dxi) {
  const Grid& g = e.grid();
  const double lo = g.xi_min;
  const double hi = g.xi_min + g.width();
  const auto s = e.samples();
  double leaving = 0.0, total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double p = std::norm(s[i]);
    total += p;
    const double dest = g.at(i) - dxi;
    if (dest < lo || dest >= hi) leaving += p;
  }
  return total > 0.0 ? leaving / total : 0.0;
}

Envelope delay(const Envelope& e, double dxi) {
  if (dxi == 0.0) return e;
  const double leaving = energy_leaving_window(e, dxi);
  if (leaving > kMaxLeakedEnergy) {
    std::ostringstream msg;
    msg << "delay by " << dxi << " pushes energy fraction " << leaving << " of '" << e.label()
        << "' out of the window";
    throw WindowOverflow(msg.str());
  }
  Spectrum s = to_spectrum(e);
  for (std::size_t m = 0; m < s.size(); ++m) s.samples[m] *= std::polar(1.0, (s.k0 + s.k_at(m)) * dxi);
  return to_envelope(s, e.label());
}

Envelope make_gaussian(const GaussianSpec& spec, const Grid& grid) {
  if (!(spec.xi0 > 0.0) || !std::isfinite(spec.kappa)) {
    throw std::invalid_argument("Gaussian pulse needs xi0 > 0 and a finite chirp");
  }
  // |E|^2 is a normal density centred at -offset with sigma = xi0 / sqrt(2).
  const double lo = grid.xi_min;
  const double hi = grid.xi_min + grid.width();
  const double outside = 0.5 * std::erfc((hi + spec.delta_xi_offset) / spec.xi0) +
                         0.5 * std::erfc(-(lo + spec.delta_xi_offset) / spec.xi0);
  if (outside > kMaxLeakedEnergy) {
    std::ostringstream msg;
    msg << "Gaussian of length " << spec.xi0 << " delayed by " << spec.delta_xi_offset
        << " leaves energy fraction " << outside << " outside the window";
    throw WindowOverflow(msg.str());
  }
  const double amp = 1.0 / (std::pow(kPi, 0.25) * std::sqrt(spec.xi0));
  const cplx shape{-1.0 / (2.0 * spec.xi0 * spec.xi0), -spec.kappa / (2.0 * spec.xi0 * spec.xi0)};
  const cplx carrier = std::polar(1.0, spec.k0 * spec.delta_xi_offset);
  std::vector<cplx> s(grid.size);
  for (std::size_t i = 0; i < grid.size; ++i) {
    const double x = grid.at(i) + spec.delta_xi_offset;
    s[i] = amp * std::exp(shape * (x * x)) * carrier;
  }
  std::ostringstream label;
  label << "gaussian(xi0=" << spec.xi0 << ",kappa=" << spec.kappa << ")";
  return normalize(Envelope(grid, std::move(s), spec.k0, label.str()));
}

std::pair<Envelope, Envelope> make_orthogonal_pair(double lambda, double xi0, const Grid& grid, double k0) {
  if (!(lambda > 0.0)) throw std::invalid_argument("orthogonal pair needs lambda > 0");
  Envelope even = make_gaussian(GaussianSpec{xi0, k0, 0.0, 0.0}, grid);
  std::vector<cplx> s(grid.size);
  for (std::size_t i = 0; i < grid.size; ++i) {
    const double x = grid.at(i);
    s[i] = std::sin(lambda * x) * std::exp(-x * x / (2.0 * xi0 * xi0));
  }
  Envelope odd = normalize(Envelope(grid, std::move(s), k0, "odd-partner"));
  return {std::move(even), std::move(odd)};
}

}  // namespace twinterf
