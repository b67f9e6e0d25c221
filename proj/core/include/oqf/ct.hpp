#pragma once

#include "oqf/fourier.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace oqf {

struct Ellipse {
  double x0 = 0.0, y0 = 0.0; // center
  double a = 1.0, b = 1.0;   // semi-axes along the rotated x and y axes
  double phi_deg = 0.0;      // counterclockwise rotation
  double rho = 1.0;          // additive intensity
};

struct EllipsePhantom {
  std::vector<Ellipse> ellipses;

  /// The standard ten-ellipse head phantom (table in data/shepp_logan.txt).
  static EllipsePhantom shepp_logan();
  /// One ellipse: the unit disk with intensity rho.
  static EllipsePhantom unit_disk(double rho = 1.0);
  /// Parses whitespace-separated rows "x0 y0 a b phi rho"; '#' starts a comment.
  static EllipsePhantom parse(std::string_view text);
  static EllipsePhantom from_file(const std::string& path);

  double value(double x, double y) const;
  /// Throws InvalidArgument unless every ellipse lies inside the unit disk
  /// and has positive semi-axes.
  void validate() const;
};

/// n x n image over [-1,1]^2. Row 0 is the top (y = 1 side); pixel (i, j)
/// has center (pixel_coord(j), -pixel_coord(i)).
struct ImageGrid {
  int n = 0;
  std::vector<double> pixels;

  static ImageGrid zeros(int n);
  double& at(int i, int j) { return pixels[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
  double at(int i, int j) const { return pixels[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
  /// (2k + 1 - n) / n: exactly antisymmetric under k -> n - 1 - k.
  static double pixel_coord(int k, int n) { return static_cast<double>(2 * k + 1 - n) / n; }
};

ImageGrid phantom_image(const EllipsePhantom& phantom, int n);

/// Line integral of the phantom along x cos(theta) + y sin(theta) = t.
double analytic_radon(const EllipsePhantom& phantom, double t, double theta);

/// P(t_j, theta_k), angles theta_k = pi k / K over a half rotation,
/// detectors t_j uniform on [t_min, t_max] including both ends.
struct Sinogram {
  int n_angles = 0;
  int n_detectors = 0;
  double t_min = -1.0;
  double t_max = 1.0;
  std::vector<double> values; // row-major, one row per angle

  double theta(int k) const;
  double detector(int j) const;
  double spacing() const { return (t_max - t_min) / (n_detectors - 1); }
  double& at(int k, int j) { return values[static_cast<std::size_t>(k) * static_cast<std::size_t>(n_detectors) + static_cast<std::size_t>(j)]; }
  double at(int k, int j) const { return values[static_cast<std::size_t>(k) * static_cast<std::size_t>(n_detectors) + static_cast<std::size_t>(j)]; }
  void validate() const;
};

Sinogram make_sinogram(const EllipsePhantom& phantom, int n_angles, int n_detectors);

struct NoiseReport {
  double mean_count = 0.0; // lambda-bar = 1 / level^2
  double scale = 0.0;      // counts per unit of projection value
  int clamped = 0;         // negative entries set to 0 before sampling
};

/// Poisson noise with relative standard deviation `level` at the mean
/// sinogram value: data are scaled so the mean bin expects 1/level^2
/// counts, sampled, and scaled back.
Sinogram add_poisson_noise(const Sinogram& sino, double level, std::uint64_t seed,
                           NoiseReport* report = nullptr);

enum class Method { DftBaseline, Oqf };

struct ReconstructionOptions {
  Method method = Method::Oqf;
  int m = 2;              // smoothness order for the optimal-quadrature path
  int image_size = 128;
  int freq_intervals = 0; // M; 0 means the baseline's padded DFT length
  double band = 0.0;      // W; 0 means the Nyquist band 1/(2 dt)
  bool half_band = true;  // inverse over [0, W] using conjugate symmetry
  int dft_padding = 0;    // 0: next power of two >= 2 * detectors
  RampKind dft_ramp = RampKind::SpatialKernel;
  int threads = 1;
};

struct ReconstructionDiagnostics {
  int freq_intervals = 0; // M used (optimal-quadrature path)
  double band = 0.0;      // W used
  int dft_padding = 0;    // L used (baseline path)
  /// Largest |Im Q| over the pixels of each view, optimal-quadrature path
  /// only. Identically zero on the half band.
  std::vector<double> max_imag;
};

/// Filtered back-projection f(x, y) = (pi / K) sum_k Q(x cos theta_k + y sin theta_k, theta_k).
ImageGrid fbp_reconstruct(const Sinogram& sino, const ReconstructionOptions& opts,
                          ReconstructionDiagnostics* diag = nullptr);

/// M actually used by the optimal-quadrature path for these options.
int resolved_freq_intervals(const Sinogram& sino, const ReconstructionOptions& opts);

struct MetricsReport {
  double e_max = 0.0;
  double mse = 0.0;
  double psnr = 0.0; // +inf when mse == 0
  double i_max = 0.0;
  std::string reference;
};

/// E_max = max |I - R|, MSE = mean (I - R)^2, PSNR = 10 log10(I_max^2 / MSE)
/// with I_max the largest reference pixel. With `mask_fov` only pixels
/// inside the unit disk count.
MetricsReport compute_metrics(const ImageGrid& image, const ImageGrid& reference,
                              std::string reference_id = "", bool mask_fov = false);

std::string_view to_string(Method m);

} // namespace oqf
