#include "farsa/libsvm.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <streambuf>
#include <string_view>

#include "farsa/errors.hpp"

namespace farsa {

namespace {

/// Read-only streambuf over a gzip file.
class GzStreamBuf : public std::streambuf {
public:
  explicit GzStreamBuf(const std::filesystem::path& path) : file_(gzopen(path.c_str(), "rb")) {
    if (file_ == nullptr) throw std::runtime_error("cannot open " + path.string());
    gzbuffer(file_, 1 << 17);
  }
  ~GzStreamBuf() override {
    if (file_ != nullptr) gzclose(file_);
  }
  GzStreamBuf(const GzStreamBuf&) = delete;
  GzStreamBuf& operator=(const GzStreamBuf&) = delete;

protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    const int got = gzread(file_, buffer_.data(), static_cast<unsigned>(buffer_.size()));
    if (got < 0) {
      int err = 0;
      throw std::runtime_error(std::string("gzip read error: ") + gzerror(file_, &err));
    }
    if (got == 0) return traits_type::eof();
    setg(buffer_.data(), buffer_.data(), buffer_.data() + got);
    return traits_type::to_int_type(*gptr());
  }

private:
  gzFile file_;
  std::array<char, 1 << 16> buffer_{};
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t b = 0;
  while (b < rest.size() && is_space(rest[b])) ++b;
  std::size_t e = b;
  while (e < rest.size() && !is_space(rest[e])) ++e;
  std::string_view tok = rest.substr(b, e - b);
  rest.remove_prefix(e);
  return tok;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_index(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::vector<std::size_t> column_counts(const SparseMatrix& a) {
  std::vector<std::size_t> counts(a.cols(), 0);
  for (std::size_t c : a.col_indices()) ++counts[c];
  return counts;
}

} // namespace

Dataset parse_libsvm(std::istream& in, const ParseOptions& options) {
  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  std::vector<double> labels;
  std::size_t max_index = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    std::string_view tok = next_token(rest);
    if (tok.empty()) continue;

    double label = 0.0;
    if (!parse_double(tok, label)) {
      throw ParseError("malformed label '" + std::string(tok) + "'", line_no);
    }
    if (!options.raw_labels) {
      if (label == 1.0) {
        label = 1.0;
      } else if (label == -1.0 || label == 0.0) {
        label = -1.0;
      } else {
        throw ParseError("unknown label value '" + std::string(tok) + "'", line_no);
      }
    }
    labels.push_back(label);

    std::size_t previous = 0;
    for (tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
      const auto colon = tok.find(':');
      std::size_t index = 0;
      double value = 0.0;
      if (colon == std::string_view::npos || !parse_index(tok.substr(0, colon), index) ||
          !parse_double(tok.substr(colon + 1), value)) {
        throw ParseError("malformed feature '" + std::string(tok) + "'", line_no);
      }
      if (index == 0) throw ParseError("feature indices are 1-based", line_no);
      if (index <= previous) {
        throw ParseError("feature indices must be strictly increasing (" + std::to_string(index) +
                             " after " + std::to_string(previous) + ")",
                         line_no);
      }
      previous = index;
      max_index = std::max(max_index, index);
      cols.push_back(index - 1);
      vals.push_back(value);
    }
    offsets.push_back(vals.size());
  }
  if (in.bad()) throw ParseError("read error");
  if (labels.empty()) throw ParseError("no samples");

  std::size_t n_cols = max_index;
  if (options.features) {
    if (*options.features < max_index) {
      throw ParseError("feature index " + std::to_string(max_index) + " exceeds declared dimension " +
                       std::to_string(*options.features));
    }
    n_cols = *options.features;
  }

  Dataset ds;
  const std::size_t rows = labels.size();
  ds.matrix = SparseMatrix(rows, n_cols, std::move(offsets), std::move(cols), std::move(vals));
  ds.labels = std::move(labels);
  ds.name = options.name;
  return ds;
}

Dataset load_libsvm(const std::filesystem::path& path, ParseOptions options) {
  if (options.name.empty()) {
    auto stem = path.filename();
    if (stem.extension() == ".gz") stem = stem.stem();
    options.name = stem.string();
  }
  if (path.extension() == ".gz") {
    GzStreamBuf buf(path);
    std::istream in(&buf);
    return parse_libsvm(in, options);
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_libsvm(in, options);
}

void write_libsvm(std::ostream& out, const Dataset& ds) {
  require_same_size(ds.labels.size(), ds.matrix.rows(), "dataset labels");
  std::string line;
  for (std::size_t r = 0; r < ds.matrix.rows(); ++r) {
    const double label = ds.labels[r];
    line = label == 1.0 ? "+1" : label == -1.0 ? "-1" : format_double(label);
    const auto idx = ds.matrix.row_indices(r);
    const auto val = ds.matrix.row_values(r);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      line += ' ';
      line += std::to_string(idx[k] + 1);
      line += ':';
      line += format_double(val[k]);
    }
    line += '\n';
    out << line;
  }
}

Dataset scale_minus1_1(const Dataset& ds) {
  const SparseMatrix& a = ds.matrix;
  const std::size_t n = a.cols();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> lo(n, inf), hi(n, -inf);
  const auto cidx = a.col_indices();
  const auto vals = a.values();
  for (std::size_t k = 0; k < vals.size(); ++k) {
    lo[cidx[k]] = std::min(lo[cidx[k]], vals[k]);
    hi[cidx[k]] = std::max(hi[cidx[k]], vals[k]);
  }
  const auto counts = column_counts(a);
  for (std::size_t c = 0; c < n; ++c) {
    if (counts[c] < a.rows()) {
      lo[c] = std::min(lo[c], 0.0);
      hi[c] = std::max(hi[c], 0.0);
    }
  }

  auto map = [&](std::size_t c, double v) {
    if (!(hi[c] > lo[c])) return 0.0;
    return 2.0 * (v - lo[c]) / (hi[c] - lo[c]) - 1.0;
  };
  // Columns where an implicit zero maps to a nonzero value must be filled in.
  std::vector<std::size_t> filled;
  for (std::size_t c = 0; c < n; ++c) {
    if (map(c, 0.0) != 0.0) filled.push_back(c);
  }

  std::vector<std::size_t> offsets{0}, out_cols;
  std::vector<double> out_vals;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto idx = a.row_indices(r);
    const auto val = a.row_values(r);
    std::size_t k = 0, f = 0;
    while (k < idx.size() || f < filled.size()) {
      std::size_t c;
      double v;
      if (f == filled.size() || (k < idx.size() && idx[k] <= filled[f])) {
        c = idx[k];
        v = val[k];
        if (f < filled.size() && filled[f] == c) ++f;
        ++k;
      } else {
        c = filled[f++];
        v = 0.0;
      }
      const double s = map(c, v);
      if (s != 0.0) {
        out_cols.push_back(c);
        out_vals.push_back(s);
      }
    }
    offsets.push_back(out_vals.size());
  }

  Dataset out;
  out.matrix = SparseMatrix(a.rows(), n, std::move(offsets), std::move(out_cols), std::move(out_vals));
  out.labels = ds.labels;
  out.name = ds.name;
  out.scaled = true;
  return out;
}

Dataset scale_max_abs(const Dataset& ds) {
  const SparseMatrix& a = ds.matrix;
  std::vector<double> peak(a.cols(), 0.0);
  const auto cidx = a.col_indices();
  const auto vals = a.values();
  for (std::size_t k = 0; k < vals.size(); ++k) peak[cidx[k]] = std::max(peak[cidx[k]], std::abs(vals[k]));
  std::vector<double> scaled(vals.begin(), vals.end());
  for (std::size_t k = 0; k < scaled.size(); ++k) {
    if (peak[cidx[k]] > 0.0) scaled[k] /= peak[cidx[k]];
  }
  Dataset out;
  out.matrix = SparseMatrix(a.rows(), a.cols(), {a.row_offsets().begin(), a.row_offsets().end()},
                            {cidx.begin(), cidx.end()}, std::move(scaled));
  out.labels = ds.labels;
  out.name = ds.name;
  out.scaled = true;
  return out;
}

Dataset scale_pixels(const Dataset& ds, unsigned bits) {
  if (bits == 0 || bits > 52) throw std::invalid_argument("pixel bit depth must be in 1..52");
  const double levels = std::ldexp(1.0, static_cast<int>(bits));
  const SparseMatrix& a = ds.matrix;
  std::vector<double> scaled(a.values().begin(), a.values().end());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto idx = a.row_indices(r);
    for (std::size_t k = a.row_offsets()[r]; k < a.row_offsets()[r + 1]; ++k) {
      const double v = scaled[k];
      if (!(v >= 0.0 && v <= levels - 1.0 && std::floor(v) == v)) {
        throw std::invalid_argument("pixel value " + format_double(v) + " at row " +
                                    std::to_string(r) + ", column " +
                                    std::to_string(idx[k - a.row_offsets()[r]]) +
                                    " is not an integer in [0, 2^" + std::to_string(bits) + ")");
      }
      scaled[k] = v / levels;
    }
  }
  Dataset out;
  out.matrix = SparseMatrix(a.rows(), a.cols(), {a.row_offsets().begin(), a.row_offsets().end()},
                            {a.col_indices().begin(), a.col_indices().end()}, std::move(scaled));
  out.labels = ds.labels;
  out.name = ds.name;
  out.scaled = true;
  return out;
}

std::vector<double> relabel_binary_mnist(std::span<const double> digits) {
  std::vector<double> out;
  out.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const double d = digits[i];
    if (!(d >= 0.0 && d <= 9.0 && std::floor(d) == d)) {
      throw std::invalid_argument("label " + std::to_string(i) + " is not a digit 0-9");
    }
    out.push_back(d <= 4.0 ? -1.0 : 1.0);
  }
  return out;
}

} // namespace farsa
