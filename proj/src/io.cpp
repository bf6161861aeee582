#include "pdk/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "pdk/error.hpp"

namespace pdk {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
  return out;
}

// Next whitespace-delimited header token, skipping comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n' && c != '\r') {}
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw Error(ErrorCode::format, "PGM header is truncated");
  return tok;
}

std::size_t header_number(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw Error(ErrorCode::format, std::string("PGM ") + what + " is not a number: '" + tok + "'");
  return v;
}

double round_half_even(double x) { return std::nearbyint(x); }

}  // namespace

Matrix PgmImage::to_matrix() const {
  Matrix m(height, width);
  for (std::size_t i = 0; i < pixels.size(); ++i) m.data()[i] = pixels[i];
  return m;
}

PgmImage PgmImage::from_matrix(const Matrix& m, unsigned maxval) {
  if (maxval == 0 || maxval > 255) throw Error(ErrorCode::invalid_argument, "maxval must lie in 1..255");
  PgmImage img{m.cols(), m.rows(), maxval, std::vector<std::uint8_t>(m.rows() * m.cols())};
  // nearbyint honours the current rounding mode, which is round-to-nearest-even by default.
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const double v = std::clamp(m.data()[i], 0.0, static_cast<double>(maxval));
    img.pixels[i] = static_cast<std::uint8_t>(round_half_even(v));
  }
  return img;
}

PgmImage parse_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5'))
    throw Error(ErrorCode::format, "not a PGM file (expected magic P2 or P5)");
  const bool binary = magic[1] == '5';

  PgmImage img;
  img.width = header_number(in, "width");
  img.height = header_number(in, "height");
  const std::size_t maxval = header_number(in, "maxval");
  if (img.width == 0 || img.height == 0) throw Error(ErrorCode::format, "PGM has zero size");
  if (maxval == 0) throw Error(ErrorCode::format, "PGM maxval must be positive");
  if (maxval > 255)
    throw Error(ErrorCode::format, "unsupported PGM depth: maxval " + std::to_string(maxval) +
                                       " exceeds 255");
  img.maxval = static_cast<unsigned>(maxval);

  const std::size_t count = img.width * img.height;
  img.pixels.resize(count);
  if (binary) {
    // header_token already consumed the single whitespace byte after maxval.
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count)
      throw Error(ErrorCode::format, "PGM payload is truncated: expected " + std::to_string(count) +
                                         " bytes, got " + std::to_string(in.gcount()));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t v;
      try {
        v = header_number(in, "pixel");
      } catch (const Error&) {
        throw Error(ErrorCode::format, "PGM payload is truncated or malformed at pixel " +
                                           std::to_string(i));
      }
      if (v > maxval)
        throw Error(ErrorCode::format, "PGM pixel " + std::to_string(i) + " exceeds maxval");
      img.pixels[i] = static_cast<std::uint8_t>(v);
    }
  }
  for (auto p : img.pixels)
    if (p > img.maxval) throw Error(ErrorCode::format, "PGM pixel exceeds maxval");
  return img;
}

PgmImage read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_pgm(in);
}

void write_pgm(const PgmImage& img, std::ostream& out) {
  out << "P5\n" << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw Error(ErrorCode::io, "failed to write PGM");
}

void write_pgm(const PgmImage& img, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_pgm(img, out);
}

void write_pgm_ascii(const PgmImage& img, std::ostream& out) {
  out << "P2\n# ascii graymap\n" << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  for (std::size_t r = 0; r < img.height; ++r) {
    for (std::size_t c = 0; c < img.width; ++c)
      out << (c ? " " : "") << static_cast<unsigned>(img.pixels[r * img.width + c]);
    out << '\n';
  }
}

Matrix parse_csv(std::istream& in, bool skip_header) {
  std::string line;
  if (skip_header) std::getline(in, line);
  std::vector<double> data;
  std::size_t cols = 0, rows = 0;
  std::size_t lineno = skip_header ? 1 : 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t end = line.find(',', start);
      std::string field = line.substr(start, end == std::string::npos ? std::string::npos : end - start);
      const auto b = field.find_first_not_of(" \t");
      const auto e = field.find_last_not_of(" \t");
      field = b == std::string::npos ? std::string() : field.substr(b, e - b + 1);
      double v = 0.0;
      const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc{} || p != field.data() + field.size())
        throw Error(ErrorCode::format, "line " + std::to_string(lineno) + ": '" + field +
                                           "' is not a number");
      if (!std::isfinite(v))
        throw Error(ErrorCode::format, "line " + std::to_string(lineno) + ": non-finite value");
      data.push_back(v);
      ++count;
      if (end == std::string::npos) break;
      start = end + 1;
    }
    if (rows == 0) cols = count;
    else if (count != cols)
      throw Error(ErrorCode::format, "line " + std::to_string(lineno) + " has " +
                                         std::to_string(count) + " fields, expected " +
                                         std::to_string(cols));
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::format, "CSV input holds no rows");
  return Matrix(rows, cols, std::move(data));
}

Matrix read_csv(const std::filesystem::path& path, bool skip_header) {
  auto in = open_in(path);
  return parse_csv(in, skip_header);
}

void write_csv(const Matrix& m, std::ostream& out) {
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::io, "failed to write CSV");
}

void write_csv(const Matrix& m, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_csv(m, out);
}

}  // namespace pdk
