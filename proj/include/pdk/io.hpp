#pragma once
//
// File formats: 8-bit netpbm graymaps and comma-separated matrices.
//
// PGM: magic P2 (ASCII) or P5 (binary) is read, P5 is written. Header tokens
// are width, height and maxval separated by whitespace; '#' starts a comment
// running to the end of the line. maxval must lie in 1..255. A P5 payload
// starts after exactly one whitespace byte following maxval and holds
// width·height bytes in row-major order.
//
// CSV: one matrix row per line, values separated by ',', '.' as decimal
// point. Values are written with 17 significant digits so a write/read cycle
// reproduces every double exactly.
//

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pdk/linalg.hpp"

namespace pdk {

struct PgmImage {
  std::size_t width = 0;
  std::size_t height = 0;
  unsigned maxval = 255;
  std::vector<std::uint8_t> pixels;  ///< row-major

  /// height×width matrix of gray values.
  Matrix to_matrix() const;
  /// Clamps to [0, maxval] and rounds half to even.
  static PgmImage from_matrix(const Matrix& m, unsigned maxval = 255);

  bool operator==(const PgmImage&) const = default;
};

PgmImage parse_pgm(std::istream& in);
PgmImage read_pgm(const std::filesystem::path& path);
void write_pgm(const PgmImage& img, std::ostream& out);
void write_pgm(const PgmImage& img, const std::filesystem::path& path);
/// ASCII variant, for fixtures.
void write_pgm_ascii(const PgmImage& img, std::ostream& out);

Matrix parse_csv(std::istream& in, bool skip_header = false);
Matrix read_csv(const std::filesystem::path& path, bool skip_header = false);
void write_csv(const Matrix& m, std::ostream& out);
void write_csv(const Matrix& m, const std::filesystem::path& path);

}  // namespace pdk
