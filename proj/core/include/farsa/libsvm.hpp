#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "farsa/linalg.hpp"

namespace farsa {

/// Design matrix (samples x features) with one label per sample.
struct Dataset {
  SparseMatrix matrix;
  std::vector<double> labels;
  std::string name;
  bool scaled = false;

  std::size_t samples() const noexcept { return matrix.rows(); }
  std::size_t features() const noexcept { return matrix.cols(); }
};

struct ParseOptions {
  /// Column count; must cover every index in the file. Defaults to the largest index seen.
  std::optional<std::size_t> features;
  /// Keep labels verbatim instead of mapping them to +-1 (multi-class files such as mnist).
  bool raw_labels = false;
  std::string name;
};

/// Reads LIBSVM text: one sample per line, "<label> <idx>:<val> ...", with
/// 1-based strictly increasing indices. Labels +1/1 map to +1 and -1/0 to -1.
/// Blank lines are skipped. Throws ParseError naming the offending line.
Dataset parse_libsvm(std::istream& in, const ParseOptions& options = {});

/// Opens `path` (gzip-decompressing when it ends in ".gz") and parses it.
/// The dataset name defaults to the file name without a ".gz" suffix.
Dataset load_libsvm(const std::filesystem::path& path, ParseOptions options = {});

/// Writes `ds` so that parse_libsvm reproduces it bit for bit.
void write_libsvm(std::ostream& out, const Dataset& ds);

/// Per-column affine map onto [-1, 1] using the column min and max over all
/// samples (implicit zeros included). Constant columns become 0. Entries that
/// were zero may become nonzero and are stored.
Dataset scale_minus1_1(const Dataset& ds);

/// Divides each column by its largest magnitude. Keeps the sparsity pattern;
/// an alternative to scale_minus1_1 for very sparse data.
Dataset scale_max_abs(const Dataset& ds);

/// Integer pixel intensities P in [0, 2^bits - 1] mapped to P / 2^bits.
Dataset scale_pixels(const Dataset& ds, unsigned bits);

/// Digits 0-4 -> -1, digits 5-9 -> +1.
std::vector<double> relabel_binary_mnist(std::span<const double> digits);

} // namespace farsa
