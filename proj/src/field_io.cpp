#include "mwkr/field_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mwkr/error.hpp"

namespace mwkr {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::matrix: return "matrix";
    case FieldKind::vector: return "vector";
    case FieldKind::scalar: return "scalar";
  }
  return "";
}

void write_header(std::ostream& out, FieldKind kind, const Grid& grid, int dim) {
  out << "# mwfield " << kind_name(kind) << '\n'
      << grid.dim() << ' ' << format_double(grid.half_width()) << ' ' << grid.points_per_axis() << ' ' << dim << '\n';
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    require(static_cast<bool>(std::getline(in_, line)), ErrorCode::FormatError,
            "unexpected end of field file after line " + std::to_string(line_));
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  int line() const noexcept { return line_; }

  /// Next line parsed as exactly `expected` numbers.
  std::vector<double> row(std::size_t expected);

 private:
  std::istream& in_;
  int line_ = 0;
};

double parse_number(std::string_view token, int line) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  require(res.ec == std::errc() && res.ptr == token.data() + token.size(), ErrorCode::FormatError,
          "line " + std::to_string(line) + ": bad number '" + std::string(token) + "'");
  return value;
}

std::vector<double> parse_row(const std::string& text, std::size_t expected, int line) {
  std::vector<double> out;
  out.reserve(expected);
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
    out.push_back(parse_number(std::string_view(text).substr(pos, end - pos), line));
    pos = end;
  }
  require(out.size() == expected, ErrorCode::FormatError,
          "line " + std::to_string(line) + ": expected " + std::to_string(expected) + " numbers, got " +
              std::to_string(out.size()));
  return out;
}

std::vector<double> LineReader::row(std::size_t expected) {
  const std::string text = next();
  return parse_row(text, expected, line_);
}

FieldHeader read_header(LineReader& reader, FieldKind expected) {
  const std::string magic = reader.next();
  const std::string want = "# mwfield " + std::string(kind_name(expected));
  require(magic == want, ErrorCode::FormatError, "line 1: expected '" + want + "', got '" + magic + "'");
  std::istringstream ss(reader.next());
  int n = 0, points = 0, dim = 0;
  std::string half;
  require(static_cast<bool>(ss >> n >> half >> points >> dim), ErrorCode::FormatError,
          "line 2: expected 'n L N d'");
  const double l = parse_number(half, 2);
  require(dim >= 1 && dim <= kMaxDim, ErrorCode::FormatError, "line 2: component count out of range");
  return {expected, Grid(n, l, points), dim};
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::FormatError, "cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::FormatError, "cannot read " + path.string());
  return in;
}

}  // namespace

void write_weight_field(std::ostream& out, const MatrixWeightField& w) {
  const int d = w.dim();
  write_header(out, FieldKind::matrix, w.grid(), d);
  std::string row;
  for (std::size_t i = 0; i < w.size(); ++i) {
    row.clear();
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        const cplx z = w[i](r, c);
        if (!row.empty()) row += ' ';
        row += format_double(z.real());
        row += ' ';
        row += format_double(z.imag());
      }
    }
    out << row << '\n';
  }
}

void write_vector_field(std::ostream& out, const SampledVectorField& f) {
  write_header(out, FieldKind::vector, f.grid(), f.dim());
  std::string row;
  for (std::size_t i = 0; i < f.size(); ++i) {
    row.clear();
    for (cplx z : f.at(i)) {
      if (!row.empty()) row += ' ';
      row += format_double(z.real());
      row += ' ';
      row += format_double(z.imag());
    }
    out << row << '\n';
  }
}

void write_scalar_field(std::ostream& out, const Grid& grid, std::span<const double> values) {
  require(values.size() == grid.size(), ErrorCode::ShapeMismatch, "scalar field size does not match grid");
  write_header(out, FieldKind::scalar, grid, 1);
  for (double v : values) out << format_double(v) << '\n';
}

MatrixWeightField read_weight_field(std::istream& in) {
  LineReader reader(in);
  const FieldHeader h = read_header(reader, FieldKind::matrix);
  const int d = h.dim;
  std::vector<HermitianMatrix> values;
  values.reserve(h.grid.size());
  for (std::size_t i = 0; i < h.grid.size(); ++i) {
    const auto nums = reader.row(static_cast<std::size_t>(2 * d * d));
    CMatrix m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        const std::size_t k = static_cast<std::size_t>(2 * (r * d + c));
        m(r, c) = cplx(nums[k], nums[k + 1]);
      }
    values.emplace_back(m);
  }
  return MatrixWeightField(h.grid, std::move(values));
}

SampledVectorField read_vector_field(std::istream& in) {
  LineReader reader(in);
  const FieldHeader h = read_header(reader, FieldKind::vector);
  std::vector<cplx> data;
  data.reserve(h.grid.size() * static_cast<std::size_t>(h.dim));
  for (std::size_t i = 0; i < h.grid.size(); ++i) {
    const auto nums = reader.row(static_cast<std::size_t>(2 * h.dim));
    for (int c = 0; c < h.dim; ++c) data.emplace_back(nums[2 * c], nums[2 * c + 1]);
  }
  return SampledVectorField(h.grid, h.dim, std::move(data));
}

std::pair<Grid, std::vector<double>> read_scalar_field(std::istream& in) {
  LineReader reader(in);
  const FieldHeader h = read_header(reader, FieldKind::scalar);
  require(h.dim == 1, ErrorCode::FormatError, "line 2: scalar fields have d = 1");
  std::vector<double> values;
  values.reserve(h.grid.size());
  for (std::size_t i = 0; i < h.grid.size(); ++i) values.push_back(reader.row(1)[0]);
  return {h.grid, std::move(values)};
}

void save_weight_field(const std::filesystem::path& path, const MatrixWeightField& w) {
  auto out = open_out(path);
  write_weight_field(out, w);
}

void save_vector_field(const std::filesystem::path& path, const SampledVectorField& f) {
  auto out = open_out(path);
  write_vector_field(out, f);
}

void save_scalar_field(const std::filesystem::path& path, const Grid& grid, std::span<const double> values) {
  auto out = open_out(path);
  write_scalar_field(out, grid, values);
}

MatrixWeightField load_weight_field(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_weight_field(in);
}

SampledVectorField load_vector_field(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_vector_field(in);
}

std::pair<Grid, std::vector<double>> load_scalar_field(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_scalar_field(in);
}

}  // namespace mwkr
