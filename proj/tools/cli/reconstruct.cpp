#include "cli.hpp"
#include "commands.hpp"
#include "output.hpp"
#include "params.hpp"

#include "oqf/ct.hpp"
#include "oqf/ct_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

namespace oqf::cli {

namespace {

struct MethodSpec {
  std::string id; // "dft" or "oqf-m<k>"
  Method method;
  int m;
};

std::vector<MethodSpec> parse_methods(const std::string& text) {
  std::vector<MethodSpec> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item == "dft") {
      out.push_back({item, Method::DftBaseline, 0});
    } else if (item.size() == 6 && item.rfind("oqf-m", 0) == 0 && item[5] >= '1' && item[5] <= '3') {
      out.push_back({item, Method::Oqf, item[5] - '0'});
    } else {
      throw InvalidArgument("unknown method '" + item + "' (dft, oqf-m1, oqf-m2, oqf-m3)");
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
      if (out[i].id == out.back().id)
        throw InvalidArgument("method '" + item + "' listed twice");
  }
  if (out.empty())
    throw InvalidArgument("--methods is empty");
  return out;
}

EllipsePhantom load_phantom(const std::string& id) {
  if (id == "shepp-logan")
    return EllipsePhantom::shepp_logan();
  if (id == "unit-disk")
    return EllipsePhantom::unit_disk();
  return EllipsePhantom::from_file(id);
}

bool has_binary_magic(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[8] = {};
  in.read(magic, sizeof magic);
  return in && std::string(magic, 8) == "OQFSINO1";
}

} // namespace

void add_reconstruct(CLI::App& root, std::ostream& out, std::ostream& err) {
  struct Args {
    int size = 128;
    int views = 180;
    int detectors = 0;
    bool full_scale = false;
    std::string methods = "dft,oqf-m2,oqf-m3";
    double noise = 0.0;
    long long seed = 7;
    int threads = 1;
    int freq_intervals = 0;
    double band = 0.0;
    bool full_band = false;
    int dft_padding = 0;
    std::string ramp = "kernel";
    std::string phantom = "shepp-logan";
    std::string sinogram;
    std::string output_dir;
    std::string image_format = "pgm";
    double window_lo = std::numeric_limits<double>::quiet_NaN();
    double window_hi = std::numeric_limits<double>::quiet_NaN();
    std::string save_sinogram = "none";
    bool mask_fov = false;
    bool no_timing = false;
  };
  auto args = std::make_shared<Args>();
  auto* app = root.add_subcommand("reconstruct", "Filtered back-projection of a phantom sinogram with quality metrics");
  auto params = std::make_shared<Params>(app, "reconstruct");
  params->add("size", args->size, "Image size n (n x n pixels over [-1,1]^2)");
  params->add("views", args->views, "Number of projection angles over [0, pi)");
  params->add("detectors", args->detectors, "Detector count over [-1,1] (0: image size)");
  params->flag("full-scale", args->full_scale, "512 x 512 image, 360 views, 512 detectors");
  params->add("methods", args->methods, "Comma-separated list of dft, oqf-m1, oqf-m2, oqf-m3");
  params->add("noise", args->noise, "Relative Poisson noise level at the mean bin (0: clean)");
  params->add("seed", args->seed, "Noise seed");
  params->add("threads", args->threads, "Worker threads (results do not depend on it)");
  params->add("freq-intervals", args->freq_intervals, "Frequency intervals M (0: padded DFT length)");
  params->add("band", args->band, "Band edge W in cycles (0: Nyquist of the detector spacing)");
  params->flag("full-band", args->full_band, "Inverse over [-W, W] instead of [0, W] with conjugate symmetry");
  params->add("dft-padding", args->dft_padding, "Baseline DFT length (0: next power of two >= 2 detectors)");
  params->add("ramp", args->ramp, "Baseline ramp: kernel (Ram-Lak spatial kernel) or bins (|k| / (L dt))");
  params->add("phantom", args->phantom, "shepp-logan, unit-disk, or a path to an ellipse table");
  params->add("sinogram", args->sinogram, "Reconstruct this sinogram (CSV or binary) instead of a simulated one");
  params->add("output-dir", args->output_dir, std::string("Output directory (default: $") + kOutputDirEnv + " or .)");
  params->add("image-format", args->image_format, "pgm, png, both or none");
  params->add("window-lo", args->window_lo, "Gray level 0 (default: reference minimum)");
  params->add("window-hi", args->window_hi, "Gray level 65535 (default: reference maximum)");
  params->add("save-sinogram", args->save_sinogram, "none, csv, bin or both");
  params->flag("mask-fov", args->mask_fov, "Only pixels inside the unit disk enter the metrics");
  params->flag("no-timing", args->no_timing, "Write runtime_ms as null so reports are byte-reproducible");

  app->callback([args, params, &out, &err] {
    params->apply_config();
    Args& a = *args;
    if (a.full_scale) {
      a.size = 512;
      a.views = 360;
      a.detectors = 512;
    }
    if (a.detectors == 0)
      a.detectors = a.size;
    const auto methods = parse_methods(a.methods);
    if (a.image_format != "pgm" && a.image_format != "png" && a.image_format != "both" && a.image_format != "none")
      throw InvalidArgument("--image-format must be pgm, png, both or none");
    if (a.save_sinogram != "none" && a.save_sinogram != "csv" && a.save_sinogram != "bin" && a.save_sinogram != "both")
      throw InvalidArgument("--save-sinogram must be none, csv, bin or both");
    if (a.ramp != "kernel" && a.ramp != "bins")
      throw InvalidArgument("--ramp must be kernel or bins");
    if (a.noise < 0.0 || a.noise > 1.0)
      throw InvalidArgument("--noise must lie in [0, 1]");
    if (a.seed < 0)
      throw InvalidArgument("--seed must be nonnegative");
    if ((a.image_format == "png" || a.image_format == "both") && !png_supported())
      throw InvalidArgument("PNG output is not available in this build");

    std::string dir = a.output_dir;
    if (dir.empty()) {
      const char* env = std::getenv(kOutputDirEnv);
      dir = env && *env ? env : ".";
    }
    std::filesystem::create_directories(dir);
    const auto path = [&](const std::string& name) { return (std::filesystem::path(dir) / name).string(); };

    const EllipsePhantom phantom = load_phantom(a.phantom);
    const ImageGrid reference = phantom_image(phantom, a.size);

    Sinogram sino;
    Json noise_json = nullptr;
    if (!a.sinogram.empty()) {
      sino = has_binary_magic(a.sinogram) ? read_sinogram_binary(a.sinogram) : read_sinogram_csv(a.sinogram);
    } else {
      sino = make_sinogram(phantom, a.views, a.detectors);
    }
    if (a.noise > 0.0) {
      NoiseReport rep;
      sino = add_poisson_noise(sino, a.noise, static_cast<std::uint64_t>(a.seed), &rep);
      noise_json = {{"level", a.noise},
                    {"seed", a.seed},
                    {"mean_count", rep.mean_count},
                    {"scale", rep.scale},
                    {"clamped", rep.clamped}};
    }
    if (a.save_sinogram == "csv" || a.save_sinogram == "both")
      write_sinogram_csv(sino, path("sinogram.csv"));
    if (a.save_sinogram == "bin" || a.save_sinogram == "both")
      write_sinogram_binary(sino, path("sinogram.bin"));

    DisplayWindow window;
    const auto [mn, mx] = std::minmax_element(reference.pixels.begin(), reference.pixels.end());
    window.lo = std::isnan(a.window_lo) ? *mn : a.window_lo;
    window.hi = std::isnan(a.window_hi) ? *mx : a.window_hi;
    if (!(window.lo < window.hi))
      window.hi = window.lo + 1.0;

    const auto write_image = [&](const ImageGrid& img, const std::string& stem) {
      Json files = Json::array();
      if (a.image_format == "pgm" || a.image_format == "both") {
        write_pgm16(img, path(stem + ".pgm"), window);
        files.push_back(stem + ".pgm");
      }
      if (a.image_format == "png" || a.image_format == "both") {
        write_png16(img, path(stem + ".png"), window);
        files.push_back(stem + ".png");
      }
      return files;
    };

    Json comparison;
    comparison["command"] = "reconstruct";
    comparison["phantom"] = a.phantom;
    comparison["sinogram"] = a.sinogram.empty() ? Json("simulated") : Json(a.sinogram);
    comparison["geometry"] = {{"image_size", a.size},
                              {"views", sino.n_angles},
                              {"detectors", sino.n_detectors},
                              {"t_min", sino.t_min},
                              {"t_max", sino.t_max}};
    comparison["noise"] = noise_json;
    comparison["window"] = {{"lo", window.lo}, {"hi", window.hi}};
    comparison["mask_fov"] = a.mask_fov;
    comparison["reference_images"] = write_image(reference, "reference");

    Json results = Json::array();
    for (const auto& ms : methods) {
      ReconstructionOptions opts;
      opts.method = ms.method;
      opts.m = ms.method == Method::Oqf ? ms.m : 2;
      opts.image_size = a.size;
      opts.freq_intervals = a.freq_intervals;
      opts.band = a.band;
      opts.half_band = !a.full_band;
      opts.dft_padding = a.dft_padding;
      opts.dft_ramp = a.ramp == "bins" ? RampKind::Bins : RampKind::SpatialKernel;
      opts.threads = a.threads;
      ReconstructionDiagnostics diag;
      const auto t0 = std::chrono::steady_clock::now();
      const ImageGrid img = fbp_reconstruct(sino, opts, &diag);
      const double ms_elapsed =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      const MetricsReport mr = compute_metrics(img, reference, a.phantom, a.mask_fov);
      const Json runtime = a.no_timing ? Json(nullptr) : Json(ms_elapsed);
      const Json seed = a.noise > 0.0 ? Json(a.seed) : Json(nullptr);

      Json metrics;
      metrics["method"] = std::string(to_string(ms.method));
      metrics["m"] = ms.method == Method::Oqf ? Json(ms.m) : Json(nullptr);
      metrics["noise_seed"] = seed;
      metrics["e_max"] = mr.e_max;
      metrics["mse"] = mr.mse;
      metrics["psnr"] = number_or_sentinel(mr.psnr);
      metrics["runtime_ms"] = runtime;
      emit(metrics.dump(2) + "\n", path("metrics_" + ms.id + ".json"), out);

      Json row;
      row["id"] = ms.id;
      row.update(metrics);
      row["i_max"] = mr.i_max;
      if (ms.method == Method::Oqf) {
        row["freq_intervals"] = diag.freq_intervals;
        row["band"] = diag.band;
        row["half_band"] = opts.half_band;
        row["max_imag"] = diag.max_imag.empty()
                              ? 0.0
                              : *std::max_element(diag.max_imag.begin(), diag.max_imag.end());
      } else {
        row["dft_padding"] = diag.dft_padding;
        row["ramp"] = a.ramp;
      }
      row["images"] = write_image(img, "recon_" + ms.id);
      results.push_back(std::move(row));
      err << ms.id << ": psnr " << csv_number(mr.psnr) << " dB, e_max " << csv_number(mr.e_max) << '\n';
    }
    comparison["results"] = std::move(results);
    const std::string text = comparison.dump(2) + "\n";
    emit(text, path("comparison.json"), out);
    out << text;
  });
}

} // namespace oqf::cli
