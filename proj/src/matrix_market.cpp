#include "btg/io/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace btg::io {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

struct Header {
  enum class Format { Coordinate, Array } format;
  enum class Field { Real, Integer, Complex } field;
  enum class Symmetry { General, Symmetric, SkewSymmetric, Hermitian } symmetry;
};

bool next_data_line(std::istream& in, std::string& out, int& line) {
  while (std::getline(in, out)) {
    ++line;
    const auto first = out.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    if (out[first] == '%') continue;
    return true;
  }
  return false;
}

Complex parse_value(std::istringstream& ls, Header::Field field, const std::string& origin, int line) {
  if (field == Header::Field::Complex) {
    double re, im;
    if (!(ls >> re >> im)) fail(origin, line, "expected 'real imag' pair");
    return Complex(re, im);
  }
  double v;
  if (!(ls >> v)) fail(origin, line, "expected a numeric value");
  return Complex(v, 0.0);
}

void place(Matrix& m, Index i, Index j, Complex v, Header::Symmetry sym, const std::string& origin,
           int line) {
  m(i, j) = v;
  if (i == j || sym == Header::Symmetry::General) return;
  switch (sym) {
    case Header::Symmetry::Symmetric:
      m(j, i) = v;
      break;
    case Header::Symmetry::SkewSymmetric:
      m(j, i) = -v;
      break;
    case Header::Symmetry::Hermitian:
      m(j, i) = std::conj(v);
      break;
    default:
      fail(origin, line, "unreachable symmetry");
  }
}

}  // namespace

Matrix read_matrix_market(std::istream& in, const std::string& origin) {
  int line = 0;
  std::string text;
  if (!std::getline(in, text)) fail(origin, 1, "empty input");
  ++line;

  std::istringstream hs(text);
  std::string banner, object, format_s, field_s, symmetry_s;
  hs >> banner >> object >> format_s >> field_s >> symmetry_s;
  if (lower(banner) != "%%matrixmarket") fail(origin, line, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") fail(origin, line, "only the 'matrix' object is supported");

  Header header{};
  const std::string format = lower(format_s), field = lower(field_s), symmetry = lower(symmetry_s);
  if (format == "coordinate")
    header.format = Header::Format::Coordinate;
  else if (format == "array")
    header.format = Header::Format::Array;
  else
    fail(origin, line, "unknown format '" + format_s + "'");

  if (field == "real")
    header.field = Header::Field::Real;
  else if (field == "integer")
    header.field = Header::Field::Integer;
  else if (field == "complex")
    header.field = Header::Field::Complex;
  else if (field == "pattern")
    fail(origin, line, "pattern matrices carry no values");
  else
    fail(origin, line, "unknown field '" + field_s + "'");

  if (symmetry == "general")
    header.symmetry = Header::Symmetry::General;
  else if (symmetry == "symmetric")
    header.symmetry = Header::Symmetry::Symmetric;
  else if (symmetry == "skew-symmetric")
    header.symmetry = Header::Symmetry::SkewSymmetric;
  else if (symmetry == "hermitian")
    header.symmetry = Header::Symmetry::Hermitian;
  else
    fail(origin, line, "unknown symmetry '" + symmetry_s + "'");

  if (!next_data_line(in, text, line)) fail(origin, line, "missing size line");
  std::istringstream ss(text);

  if (header.format == Header::Format::Coordinate) {
    long rows, cols, nnz;
    if (!(ss >> rows >> cols >> nnz)) fail(origin, line, "expected 'rows cols nnz'");
    if (rows < 1 || cols < 1 || nnz < 0) fail(origin, line, "invalid sizes");
    Matrix m = Matrix::Zero(rows, cols);
    for (long k = 0; k < nnz; ++k) {
      if (!next_data_line(in, text, line)) fail(origin, line, "unexpected end of file in entry list");
      std::istringstream ls(text);
      long i, j;
      if (!(ls >> i >> j)) fail(origin, line, "expected 'row col value'");
      if (i < 1 || i > rows || j < 1 || j > cols) fail(origin, line, "index out of range");
      const Complex v = parse_value(ls, header.field, origin, line);
      place(m, i - 1, j - 1, v, header.symmetry, origin, line);
    }
    return m;
  }

  long rows, cols;
  if (!(ss >> rows >> cols)) fail(origin, line, "expected 'rows cols'");
  if (rows < 1 || cols < 1) fail(origin, line, "invalid sizes");
  Matrix m = Matrix::Zero(rows, cols);
  const bool lower_only = header.symmetry != Header::Symmetry::General;
  if (lower_only && rows != cols) fail(origin, line, "symmetric array matrices must be square");
  const bool skip_diag = header.symmetry == Header::Symmetry::SkewSymmetric;
  // Array format is column-major; non-general variants store the lower
  // triangle only (skew-symmetric additionally omits the diagonal).
  for (Index j = 0; j < cols; ++j) {
    const Index i0 = lower_only ? (skip_diag ? j + 1 : j) : 0;
    for (Index i = i0; i < rows; ++i) {
      if (!next_data_line(in, text, line)) fail(origin, line, "unexpected end of file in value list");
      std::istringstream ls(text);
      const Complex v = parse_value(ls, header.field, origin, line);
      place(m, i, j, v, header.symmetry, origin, line);
    }
  }
  return m;
}

Matrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_matrix_market(in, path);
}

void write_matrix_market(std::ostream& out, const Matrix& m) {
  if (m.size() == 0) throw IoError("refusing to write an empty matrix");
  const bool complex_field = (m.imag().cwiseAbs().maxCoeff() != 0.0);
  out << "%%MatrixMarket matrix array " << (complex_field ? "complex" : "real") << " general\n";
  out << m.rows() << " " << m.cols() << "\n";
  out << std::setprecision(17);
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      if (complex_field)
        out << m(i, j).real() << " " << m(i, j).imag() << "\n";
      else
        out << m(i, j).real() << "\n";
    }
}

void write_matrix_market(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_matrix_market(out, m);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace btg::io
