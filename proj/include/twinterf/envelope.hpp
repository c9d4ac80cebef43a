#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twinterf {

using cplx = std::complex<double>;

/// Uniform periodic sampling grid in the co-moving coordinate xi = x - ct.
///
/// Sample i sits at xi_min + i * xi_step for i in [0, size). The grid is
/// treated as one period of a periodic window, which makes the plain sample
/// sum equal to the trapezoid rule and the DFT exactly unitary.
struct Grid {
  double xi_min = 0.0;
  double xi_step = 0.0;
  std::size_t size = 0;

  /// Window [-half_width, half_width) with `size` samples.
  static Grid centered(double half_width, std::size_t size);
  /// Default window for a pulse of length xi0: [-8 xi0, 8 xi0), 4096 samples.
  static Grid for_pulse(double xi0, std::size_t size = 4096, double half_width_in_xi0 = 8.0);

  double at(std::size_t i) const { return xi_min + static_cast<double>(i) * xi_step; }
  double width() const { return xi_step * static_cast<double>(size); }
  /// Wavenumber spacing of the conjugate DFT grid, 2 pi / (N xi_step).
  double k_step() const;

  bool same_as(const Grid& other) const;
};

/// Slowly varying complex amplitude E0(xi) of a quasi-monochromatic pulse
/// E(xi) = E0(xi) exp(i k0 xi), sampled on a Grid.
class Envelope {
 public:
  Envelope(Grid grid, std::vector<cplx> samples, double k0, std::string label = {});

  const Grid& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  double k0() const { return k0_; }
  const std::string& label() const { return label_; }

  /// Sum |E|^2 xi_step.
  double norm_squared() const;
  /// RMS width of |E(xi)|^2 about its centroid.
  double rms_width() const;
  /// True when |E| at both ends of the window is below `tol`.
  bool decays_at_edges(double tol = 1e-8) const;

 private:
  Grid grid_;
  std::vector<cplx> samples_;
  double k0_;
  std::string label_;
};

/// Fourier amplitude beta(k) on the DFT grid conjugate to an envelope grid.
/// k is the offset from the carrier k0.
struct Spectrum {
  std::vector<cplx> samples;
  double k_min = 0.0;
  double k_step = 0.0;
  double k0 = 0.0;
  /// Origin of the envelope grid this spectrum was taken from; needed to
  /// transform back.
  double xi_min = 0.0;

  double k_at(std::size_t j) const { return k_min + static_cast<double>(j) * k_step; }
  std::size_t size() const { return samples.size(); }
  double norm_squared() const;
  bool same_grid(const Spectrum& other) const;
};

/// Linearly chirped Gaussian photon.
struct GaussianSpec {
  double xi0 = 1.0;
  double k0 = 0.0;
  double kappa = 0.0;
  double delta_xi_offset = 0.0;
};

Envelope normalize(const Envelope& e);

/// Integral of E_a(xi) E_b*(xi) over the window. Both envelopes share the
/// carrier, so the carrier factors cancel and only envelopes enter.
cplx inner_product(const Envelope& a, const Envelope& b);

/// E(xi) -> E(xi + dxi), carrier included. Applied in the spectral domain
/// as a multiplication by exp(i (k0 + k) dxi).
Envelope delay(const Envelope& e, double dxi);

/// Energy fraction of `e` that would cross the window boundary under a
/// shift by dxi.
double energy_leaving_window(const Envelope& e, double dxi);

/// beta(k) = (2 pi)^(-1/2) * integral E0(xi) exp(-i k xi) dxi.
Spectrum to_spectrum(const Envelope& e);
Envelope to_envelope(const Spectrum& s, std::string label = {});

Envelope make_gaussian(const GaussianSpec& spec, const Grid& grid);

/// Even Gaussian E1 and odd partner E2 ~ sin(lambda xi) exp(-xi^2 / 2 xi0^2),
/// both normalized and mutually orthogonal.
std::pair<Envelope, Envelope> make_orthogonal_pair(double lambda, double xi0, const Grid& grid,
                                                   double k0 = 0.0);

}  // namespace twinterf
