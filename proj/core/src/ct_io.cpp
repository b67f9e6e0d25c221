#include "oqf/ct_io.hpp"

#include "oqf/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#ifdef OQF_HAVE_PNG
#include <png.h>
#endif

namespace oqf {

std::uint16_t DisplayWindow::encode(double v) const {
  const double s = (v - lo) / (hi - lo);
  if (!(s > 0.0))
    return 0;
  if (s >= 1.0)
    return 65535;
  return static_cast<std::uint16_t>(std::lround(s * 65535.0));
}

double DisplayWindow::decode(std::uint16_t level) const { return lo + (hi - lo) * (level / 65535.0); }

namespace {

void check_window(const DisplayWindow& w) {
  if (!(w.lo < w.hi) || !std::isfinite(w.lo) || !std::isfinite(w.hi))
    throw InvalidArgument("display window needs finite lo < hi");
}

std::string fmt_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out)
    throw InvalidArgument("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in)
    throw InvalidArgument("cannot open '" + path + "'");
  return in;
}

template <class T>
void put_le(std::ostream& out, T v) {
  std::array<unsigned char, sizeof(T)> b{};
  std::memcpy(b.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(b.begin(), b.end());
  out.write(reinterpret_cast<const char*>(b.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> b{};
  in.read(reinterpret_cast<char*>(b.data()), sizeof(T));
  if (!in)
    throw InvalidArgument("sinogram file is truncated");
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(b.begin(), b.end());
  T v;
  std::memcpy(&v, b.data(), sizeof(T));
  return v;
}

constexpr char kSinoMagic[8] = {'O', 'Q', 'F', 'S', 'I', 'N', 'O', '1'};

} // namespace

// --- PGM ---------------------------------------------------------------------

void write_pgm16(const ImageGrid& img, const std::string& path, const DisplayWindow& window) {
  check_window(window);
  auto out = open_out(path, true);
  out << "P5\n# oqf-window " << fmt_g(window.lo, 17) << ' ' << fmt_g(window.hi, 17) << '\n'
      << img.n << ' ' << img.n << "\n65535\n";
  std::vector<unsigned char> bytes(img.pixels.size() * 2);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const std::uint16_t v = window.encode(img.pixels[i]);
    bytes[2 * i] = static_cast<unsigned char>(v >> 8);
    bytes[2 * i + 1] = static_cast<unsigned char>(v & 0xff);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw InvalidArgument("write failed for '" + path + "'");
}

ImageGrid read_pgm16(const std::string& path, DisplayWindow* window, const DisplayWindow& fallback) {
  auto in = open_in(path, true);
  std::string magic;
  in >> magic;
  if (magic != "P5")
    throw InvalidArgument("'" + path + "' is not a binary PGM");
  DisplayWindow w = fallback;
  std::array<long, 3> header{};
  int got = 0;
  while (got < 3) {
    in >> std::ws;
    if (in.peek() == '#') {
      std::string line;
      std::getline(in, line);
      std::istringstream ls(line);
      std::string tag;
      ls >> tag >> tag;
      if (tag == "oqf-window")
        ls >> w.lo >> w.hi;
      continue;
    }
    if (!(in >> header[static_cast<std::size_t>(got)]))
      throw InvalidArgument("'" + path + "': malformed PGM header");
    ++got;
  }
  in.get();
  if (header[0] != header[1] || header[0] < 1)
    throw InvalidArgument("'" + path + "': only square images are supported");
  if (header[2] != 65535)
    throw InvalidArgument("'" + path + "': expected maxval 65535");
  ImageGrid img = ImageGrid::zeros(static_cast<int>(header[0]));
  std::vector<unsigned char> bytes(img.pixels.size() * 2);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!in)
    throw InvalidArgument("'" + path + "': truncated pixel data");
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    img.pixels[i] = w.decode(static_cast<std::uint16_t>((bytes[2 * i] << 8) | bytes[2 * i + 1]));
  if (window)
    *window = w;
  return img;
}

// --- PNG ---------------------------------------------------------------------

#ifdef OQF_HAVE_PNG

bool png_supported() { return true; }

void write_png16(const ImageGrid& img, const std::string& path, const DisplayWindow& window) {
  check_window(window);
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp)
    throw InvalidArgument("cannot open '" + path + "' for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw NumericalFailure("libpng initialisation failed");
  }
  std::vector<unsigned char> row(static_cast<std::size_t>(img.n) * 2);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw InvalidArgument("PNG write failed for '" + path + "'");
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.n), static_cast<png_uint_32>(img.n), 16,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int i = 0; i < img.n; ++i) {
    for (int j = 0; j < img.n; ++j) {
      const std::uint16_t v = window.encode(img.at(i, j));
      row[2 * static_cast<std::size_t>(j)] = static_cast<unsigned char>(v >> 8);
      row[2 * static_cast<std::size_t>(j) + 1] = static_cast<unsigned char>(v & 0xff);
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

#else

bool png_supported() { return false; }

void write_png16(const ImageGrid&, const std::string&, const DisplayWindow&) {
  throw InvalidArgument("PNG output is not available in this build");
}

#endif

// --- sinogram ----------------------------------------------------------------

void write_sinogram_csv(const Sinogram& sino, const std::string& path, int digits) {
  sino.validate();
  auto out = open_out(path, false);
  out << "# oqf-sinogram angles=" << sino.n_angles << " detectors=" << sino.n_detectors
      << " t_min=" << fmt_g(sino.t_min, 17) << " t_max=" << fmt_g(sino.t_max, 17) << '\n';
  for (int k = 0; k < sino.n_angles; ++k) {
    for (int j = 0; j < sino.n_detectors; ++j) {
      if (j)
        out << ',';
      out << fmt_g(sino.at(k, j), digits);
    }
    out << '\n';
  }
  if (!out)
    throw InvalidArgument("write failed for '" + path + "'");
}

Sinogram read_sinogram_csv(const std::string& path) {
  auto in = open_in(path, false);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# oqf-sinogram", 0) != 0)
    throw InvalidArgument("'" + path + "': missing sinogram header line");
  Sinogram s;
  {
    std::istringstream hs(line.substr(14));
    std::string kv;
    int seen = 0;
    while (hs >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw InvalidArgument("'" + path + "': bad header field '" + kv + "'");
      const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      try {
        if (key == "angles")
          s.n_angles = std::stoi(val);
        else if (key == "detectors")
          s.n_detectors = std::stoi(val);
        else if (key == "t_min")
          s.t_min = std::stod(val);
        else if (key == "t_max")
          s.t_max = std::stod(val);
        else
          throw InvalidArgument("'" + path + "': unknown header field '" + key + "'");
      } catch (const std::logic_error&) {
        throw InvalidArgument("'" + path + "': bad header value '" + kv + "'");
      }
      ++seen;
    }
    if (seen != 4)
      throw InvalidArgument("'" + path + "': header needs angles, detectors, t_min, t_max");
  }
  if (s.n_angles < 1 || s.n_detectors < 2)
    throw InvalidArgument("'" + path + "': bad sinogram dimensions");
  s.values.reserve(static_cast<std::size_t>(s.n_angles) * static_cast<std::size_t>(s.n_detectors));
  for (int k = 0; k < s.n_angles; ++k) {
    if (!std::getline(in, line))
      throw InvalidArgument("'" + path + "': expected " + std::to_string(s.n_angles) + " rows");
    std::istringstream ls(line);
    std::string cell;
    int cols = 0;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
        throw InvalidArgument("'" + path + "': bad number '" + cell + "' in row " + std::to_string(k));
      s.values.push_back(v);
      ++cols;
    }
    if (cols != s.n_detectors)
      throw InvalidArgument("'" + path + "': row " + std::to_string(k) + " has " + std::to_string(cols) +
                            " values, expected " + std::to_string(s.n_detectors));
  }
  s.validate();
  return s;
}

void write_sinogram_binary(const Sinogram& sino, const std::string& path) {
  sino.validate();
  auto out = open_out(path, true);
  out.write(kSinoMagic, sizeof kSinoMagic);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(sino.n_angles));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(sino.n_detectors));
  put_le<double>(out, sino.t_min);
  put_le<double>(out, sino.t_max);
  for (double v : sino.values)
    put_le<double>(out, v);
  if (!out)
    throw InvalidArgument("write failed for '" + path + "'");
}

Sinogram read_sinogram_binary(const std::string& path) {
  auto in = open_in(path, true);
  char magic[sizeof kSinoMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kSinoMagic, sizeof magic) != 0)
    throw InvalidArgument("'" + path + "': not an oqf binary sinogram");
  Sinogram s;
  const auto na = get_le<std::uint32_t>(in);
  const auto nd = get_le<std::uint32_t>(in);
  if (na < 1 || nd < 2 || na > (1u << 20) || nd > (1u << 20))
    throw InvalidArgument("'" + path + "': bad sinogram dimensions");
  s.n_angles = static_cast<int>(na);
  s.n_detectors = static_cast<int>(nd);
  s.t_min = get_le<double>(in);
  s.t_max = get_le<double>(in);
  s.values.resize(static_cast<std::size_t>(na) * nd);
  for (double& v : s.values)
    v = get_le<double>(in);
  s.validate();
  return s;
}

} // namespace oqf
