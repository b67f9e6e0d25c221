#include "oqf/ct.hpp"

#include "oqf/error.hpp"
#include "oqf/fourier.hpp"
#include "oqf/detail/phantom_table.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/poisson_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace oqf {

// --- phantom -------------------------------------------------------------------

EllipsePhantom EllipsePhantom::shepp_logan() {
  static const EllipsePhantom p = parse(detail::kSheppLoganTable);
  return p;
}

EllipsePhantom EllipsePhantom::unit_disk(double rho) {
  return EllipsePhantom{{Ellipse{0.0, 0.0, 1.0, 1.0, 0.0, rho}}};
}

EllipsePhantom EllipsePhantom::parse(std::string_view text) {
  EllipsePhantom p;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    Ellipse e;
    if (!(ls >> e.x0)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw InvalidArgument("phantom table line " + std::to_string(lineno) + ": expected numbers");
      continue;
    }
    std::string extra;
    if (!(ls >> e.y0 >> e.a >> e.b >> e.phi_deg >> e.rho) || (ls >> extra))
      throw InvalidArgument("phantom table line " + std::to_string(lineno) +
                            ": expected six columns x0 y0 a b phi rho");
    p.ellipses.push_back(e);
  }
  p.validate();
  return p;
}

EllipsePhantom EllipsePhantom::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw InvalidArgument("cannot open phantom file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

double EllipsePhantom::value(double x, double y) const {
  double v = 0.0;
  for (const auto& e : ellipses) {
    const double phi = e.phi_deg * std::numbers::pi / 180.0;
    const double c = std::cos(phi), s = std::sin(phi);
    const double dx = x - e.x0, dy = y - e.y0;
    const double u = (dx * c + dy * s) / e.a;
    const double w = (-dx * s + dy * c) / e.b;
    if (u * u + w * w <= 1.0)
      v += e.rho;
  }
  return v;
}

void EllipsePhantom::validate() const {
  if (ellipses.empty())
    throw InvalidArgument("phantom has no ellipses");
  for (const auto& e : ellipses) {
    if (!(e.a > 0.0 && e.b > 0.0))
      throw InvalidArgument("ellipse semi-axes must be positive");
    if (std::hypot(e.x0, e.y0) + std::max(e.a, e.b) > 1.0 + 1e-12)
      throw InvalidArgument("ellipse extends outside the unit disk");
  }
}

ImageGrid ImageGrid::zeros(int n) {
  if (n < 1)
    throw InvalidArgument("image size must be positive");
  ImageGrid g;
  g.n = n;
  g.pixels.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  return g;
}

ImageGrid phantom_image(const EllipsePhantom& phantom, int n) {
  if (n < 16)
    throw InvalidArgument("phantom image size must be >= 16");
  ImageGrid g = ImageGrid::zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.at(i, j) = phantom.value(ImageGrid::pixel_coord(j, n), -ImageGrid::pixel_coord(i, n));
  return g;
}

double analytic_radon(const EllipsePhantom& phantom, double t, double theta) {
  const double ct = std::cos(theta), st = std::sin(theta);
  double p = 0.0;
  for (const auto& e : phantom.ellipses) {
    const double phi = e.phi_deg * std::numbers::pi / 180.0;
    const double tp = t - (e.x0 * ct + e.y0 * st);
    const double rel = theta - phi;
    const double cr = std::cos(rel), sr = std::sin(rel);
    const double a2 = e.a * e.a * cr * cr + e.b * e.b * sr * sr;
    if (tp * tp < a2)
      p += 2.0 * e.rho * e.a * e.b * std::sqrt(a2 - tp * tp) / a2;
  }
  return p;
}

// --- sinogram ------------------------------------------------------------------

double Sinogram::theta(int k) const { return std::numbers::pi * k / n_angles; }

double Sinogram::detector(int j) const {
  return t_min + (t_max - t_min) * static_cast<double>(j) / (n_detectors - 1);
}

void Sinogram::validate() const {
  if (n_angles < 1 || n_detectors < 2)
    throw InvalidArgument("sinogram needs >= 1 angle and >= 2 detectors");
  if (!(t_min < t_max))
    throw InvalidArgument("sinogram detector extent must satisfy t_min < t_max");
  if (values.size() != static_cast<std::size_t>(n_angles) * static_cast<std::size_t>(n_detectors))
    throw InvalidArgument("sinogram size does not match its geometry");
  for (double v : values)
    if (!std::isfinite(v))
      throw InvalidArgument("sinogram contains non-finite values");
}

Sinogram make_sinogram(const EllipsePhantom& phantom, int n_angles, int n_detectors) {
  Sinogram s;
  s.n_angles = n_angles;
  s.n_detectors = n_detectors;
  s.values.assign(static_cast<std::size_t>(std::max(n_angles, 0)) *
                      static_cast<std::size_t>(std::max(n_detectors, 0)),
                  0.0);
  s.validate();
  for (int k = 0; k < n_angles; ++k)
    for (int j = 0; j < n_detectors; ++j)
      s.at(k, j) = analytic_radon(phantom, s.detector(j), s.theta(k));
  return s;
}

Sinogram add_poisson_noise(const Sinogram& sino, double level, std::uint64_t seed,
                           NoiseReport* report) {
  sino.validate();
  if (!(level > 0.0 && level <= 1.0))
    throw InvalidArgument("noise level must lie in (0, 1]");
  Sinogram out = sino;
  NoiseReport rep;
  double sum = 0.0;
  for (double& v : out.values) {
    if (v < 0.0) {
      v = 0.0;
      ++rep.clamped;
    }
    sum += v;
  }
  const double mean = sum / static_cast<double>(out.values.size());
  if (!(mean > 0.0))
    throw InvalidArgument("noise model needs a sinogram with positive mean");
  rep.mean_count = 1.0 / (level * level);
  rep.scale = rep.mean_count / mean;
  boost::random::mt19937_64 rng(seed);
  for (double& v : out.values) {
    const double lambda = v * rep.scale;
    if (lambda > 0.0) {
      boost::random::poisson_distribution<long long, double> dist(lambda);
      v = static_cast<double>(dist(rng)) / rep.scale;
    }
  }
  if (report)
    *report = rep;
  return out;
}

// --- reconstruction ------------------------------------------------------------

namespace {

template <class RowFn>
void for_rows(int n, int threads, RowFn&& fn) {
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    for (int i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads)
        fn(i);
    });
  for (auto& th : pool)
    th.join();
}

ImageGrid backproject_baseline(const Sinogram& sino, const ReconstructionOptions& opts,
                               ReconstructionDiagnostics* diag) {
  const int nd = sino.n_detectors, na = sino.n_angles, n = opts.image_size;
  const double dt = sino.spacing();
  const DftRampFilter filter(nd, dt, opts.dft_padding, opts.dft_ramp);
  // Pixels reach |t| <= sqrt(2); cover that beyond the detector ends when
  // the padding allows it.
  const double reach = std::max(0.0, std::numbers::sqrt2 * std::max(-sino.t_min, sino.t_max) -
                                         std::min(-sino.t_min, sino.t_max));
  const int margin = std::min((filter.padded() - nd) / 2, static_cast<int>(std::ceil(reach / dt)) + 1);
  std::vector<std::vector<double>> q(static_cast<std::size_t>(na));
  for_rows(na, opts.threads, [&](int k) {
    q[static_cast<std::size_t>(k)] = filter.apply_extended(
        std::span<const double>(
            sino.values.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(nd),
            static_cast<std::size_t>(nd)),
        margin);
  });
  if (diag)
    diag->dft_padding = filter.padded();
  const long last = nd + 2 * margin - 1;
  ImageGrid img = ImageGrid::zeros(n);
  for_rows(n, opts.threads, [&](int i) {
    const double y = -ImageGrid::pixel_coord(i, n);
    for (int k = 0; k < na; ++k) {
      const double th = sino.theta(k);
      const double c = std::cos(th), s = std::sin(th);
      const auto& qk = q[static_cast<std::size_t>(k)];
      for (int j = 0; j < n; ++j) {
        const double t = ImageGrid::pixel_coord(j, n) * c + y * s;
        const double pos = (t - sino.t_min) / dt + margin;
        const double fl = std::floor(pos);
        const auto j0 = static_cast<long>(fl);
        double v = 0.0;
        if (j0 >= 0 && j0 < last) {
          const double w = pos - fl;
          v = (1.0 - w) * qk[static_cast<std::size_t>(j0)] + w * qk[static_cast<std::size_t>(j0 + 1)];
        } else if (j0 == last && pos == fl) {
          v = qk.back();
        }
        img.at(i, j) += v;
      }
    }
  });
  return img;
}

ImageGrid backproject_oqf(const Sinogram& sino, const ReconstructionOptions& opts,
                          ReconstructionDiagnostics* diag) {
  const int nd = sino.n_detectors, na = sino.n_angles, n = opts.image_size;
  const int intervals = nd - 1;
  const int fm = resolved_freq_intervals(sino, opts);
  const double band = opts.band > 0.0 ? opts.band : nyquist_band(sino.spacing());
  const ForwardPlan forward(sino.t_min, sino.t_max, intervals, band, fm, opts.m, opts.half_band);
  const InversePlan inverse(band, fm, opts.m,
                            opts.half_band ? InversePlan::Band::Half : InversePlan::Band::Full);

  std::vector<InversePlan::Prepared> prepared(static_cast<std::size_t>(na));
  for_rows(na, opts.threads, [&](int k) {
    const auto spec = forward.apply(std::span<const double>(
        sino.values.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(nd),
        static_cast<std::size_t>(nd)));
    prepared[static_cast<std::size_t>(k)] = inverse.prepare(spec);
  });

  // Per (row, view) maxima of |Im Q|, reduced after the parallel loop.
  const bool track_imag = diag != nullptr && !opts.half_band;
  std::vector<double> imag_max(track_imag ? static_cast<std::size_t>(n) * static_cast<std::size_t>(na) : 0);
  ImageGrid img = ImageGrid::zeros(n);
  for_rows(n, opts.threads, [&](int i) {
    const double y = -ImageGrid::pixel_coord(i, n);
    std::vector<double> ts(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
    std::vector<double> qi(track_imag ? static_cast<std::size_t>(n) : 0);
    for (int k = 0; k < na; ++k) {
      const double th = sino.theta(k);
      const double c = std::cos(th), s = std::sin(th);
      for (int j = 0; j < n; ++j)
        ts[static_cast<std::size_t>(j)] = ImageGrid::pixel_coord(j, n) * c + y * s;
      inverse.evaluate_many(prepared[static_cast<std::size_t>(k)], ts, q, qi);
      for (int j = 0; j < n; ++j)
        img.at(i, j) += q[static_cast<std::size_t>(j)];
      if (track_imag) {
        double mx = 0.0;
        for (double v : qi)
          mx = std::max(mx, std::abs(v));
        imag_max[static_cast<std::size_t>(i) * static_cast<std::size_t>(na) + static_cast<std::size_t>(k)] = mx;
      }
    }
  });
  if (diag) {
    diag->freq_intervals = fm;
    diag->band = band;
    diag->max_imag.assign(static_cast<std::size_t>(na), 0.0);
    for (std::size_t r = 0; r < imag_max.size(); ++r) {
      auto& slot = diag->max_imag[r % static_cast<std::size_t>(na)];
      slot = std::max(slot, imag_max[r]);
    }
  }
  return img;
}

} // namespace

int resolved_freq_intervals(const Sinogram& sino, const ReconstructionOptions& opts) {
  if (opts.freq_intervals > 0)
    return opts.freq_intervals;
  if (opts.dft_padding > 0)
    return opts.dft_padding + opts.dft_padding % 2;
  int l = 1;
  while (l < 2 * sino.n_detectors)
    l *= 2;
  return l;
}

ImageGrid fbp_reconstruct(const Sinogram& sino, const ReconstructionOptions& opts,
                          ReconstructionDiagnostics* diag) {
  sino.validate();
  if (opts.image_size < 1)
    throw InvalidArgument("image size must be positive");
  if (opts.method == Method::Oqf && (opts.m < 1 || opts.m > 3))
    throw InvalidArgument("optimal-quadrature reconstruction supports m in {1, 2, 3}");
  if (opts.threads < 1)
    throw InvalidArgument("thread count must be >= 1");
  if (diag)
    *diag = {};
  ImageGrid img = opts.method == Method::Oqf ? backproject_oqf(sino, opts, diag)
                                             : backproject_baseline(sino, opts, diag);
  const double scale = std::numbers::pi / sino.n_angles;
  for (double& v : img.pixels)
    v *= scale;
  return img;
}

// --- metrics -------------------------------------------------------------------

MetricsReport compute_metrics(const ImageGrid& image, const ImageGrid& reference,
                              std::string reference_id, bool mask_fov) {
  if (image.n != reference.n || image.pixels.size() != reference.pixels.size())
    throw InvalidArgument("metrics: image and reference dimensions differ");
  MetricsReport r;
  r.reference = std::move(reference_id);
  r.i_max = -std::numeric_limits<double>::infinity();
  double sq = 0.0;
  std::size_t count = 0;
  const int n = image.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (mask_fov) {
        const double x = ImageGrid::pixel_coord(j, n), y = ImageGrid::pixel_coord(i, n);
        if (x * x + y * y > 1.0)
          continue;
      }
      const double d = image.at(i, j) - reference.at(i, j);
      r.e_max = std::max(r.e_max, std::abs(d));
      sq += d * d;
      r.i_max = std::max(r.i_max, reference.at(i, j));
      ++count;
    }
  if (count == 0)
    throw InvalidArgument("metrics: no pixels selected");
  r.mse = sq / static_cast<double>(count);
  r.psnr = r.mse == 0.0 ? std::numeric_limits<double>::infinity()
                        : 10.0 * std::log10(r.i_max * r.i_max / r.mse);
  return r;
}

std::string_view to_string(Method m) { return m == Method::Oqf ? "oqf" : "dft_baseline"; }

} // namespace oqf
