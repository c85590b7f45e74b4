#include "equivar/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

namespace equivar {
namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::MalformedInput, what); }

// Longest prefix of `s` that is a decimal floating-point literal (optional sign).
std::size_t scan_number(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  const std::size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  }
  if (i == start || (i == start + 1 && s[start] == '.')) return 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    const std::size_t digits = j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > digits) i = j;
  }
  return i;
}

double to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size())
    malformed("invalid number \"" + std::string(s) + "\"");
  if (!std::isfinite(x)) malformed("non-finite number \"" + std::string(s) + "\"");
  return x;
}

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Reads the size line and the n rows as raw tokens.
std::vector<std::string> read_tokens(std::istream& in, std::size_t& n) {
  std::string line;
  std::size_t line_no = 0;
  bool have_size = false;
  std::vector<std::string> tokens;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ls(line);
    std::vector<std::string> fields;
    for (std::string t; ls >> t;) fields.push_back(t);
    if (!have_size) {
      if (fields.size() != 1) malformed("line " + std::to_string(line_no) + ": expected dimension");
      const std::string& f = fields.front();
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (ec != std::errc() || ptr != f.data() + f.size() || value == 0)
        malformed("line " + std::to_string(line_no) + ": invalid dimension \"" + f + "\"");
      n = value;
      have_size = true;
      tokens.reserve(n * n);
      continue;
    }
    if (rows == n) malformed("line " + std::to_string(line_no) + ": more than n rows");
    if (fields.size() != n)
      malformed("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                " entries, got " + std::to_string(fields.size()));
    tokens.insert(tokens.end(), fields.begin(), fields.end());
    ++rows;
  }
  if (!have_size) malformed("missing dimension line");
  if (rows != n)
    malformed("expected " + std::to_string(n) + " rows, got " + std::to_string(rows));
  return tokens;
}

}  // namespace

Complex parse_complex(std::string_view token) {
  if (token.empty()) malformed("empty entry");
  if (token.back() != 'i') return {to_double(token), 0.0};

  std::string_view body = token.substr(0, token.size() - 1);
  // Pure imaginary: "bi", "-i", "i".
  const std::size_t first = scan_number(body);
  if (first == body.size() || body.empty() || body == "+" || body == "-") {
    const double im = (body.empty() || body == "+") ? 1.0 : body == "-" ? -1.0 : to_double(body);
    return {0.0, im};
  }
  if (first == 0) malformed("invalid complex entry \"" + std::string(token) + "\"");
  const double re = to_double(body.substr(0, first));
  std::string_view rest = body.substr(first);
  if (rest.front() != '+' && rest.front() != '-')
    malformed("invalid complex entry \"" + std::string(token) + "\"");
  double im;
  if (rest == "+" || rest == "-")
    im = rest == "+" ? 1.0 : -1.0;
  else if (scan_number(rest) == rest.size())
    im = to_double(rest);
  else
    malformed("invalid complex entry \"" + std::string(token) + "\"");
  return {re, im};
}

std::string format_complex(const Complex& z) {
  const double im = z.imag();
  return fmt::format("{:.17g}{}{:.17g}i", z.real(), std::signbit(im) ? "-" : "+", std::abs(im));
}

RealMatrix read_real_matrix(std::istream& in) {
  std::size_t n = 0;
  const auto tokens = read_tokens(in, n);
  std::vector<double> entries;
  entries.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!t.empty() && t.back() == 'i') malformed("complex entry \"" + t + "\" in a real matrix");
    entries.push_back(to_double(t));
  }
  return RealMatrix(n, std::move(entries));
}

ComplexMatrix read_complex_matrix(std::istream& in) {
  std::size_t n = 0;
  const auto tokens = read_tokens(in, n);
  std::vector<Complex> entries;
  entries.reserve(tokens.size());
  for (const auto& t : tokens) entries.push_back(parse_complex(t));
  return ComplexMatrix(n, std::move(entries));
}

namespace {
template <typename Reader>
auto load(const std::filesystem::path& path, Reader reader) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  return reader(in);
}
}  // namespace

RealMatrix load_real_matrix(const std::filesystem::path& path) {
  return load(path, [](std::istream& in) { return read_real_matrix(in); });
}

ComplexMatrix load_complex_matrix(const std::filesystem::path& path) {
  return load(path, [](std::istream& in) { return read_complex_matrix(in); });
}

void write_matrix(std::ostream& out, const RealMatrix& a) {
  out << a.size() << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j)
      out << (j ? " " : "") << fmt::format("{:.17g}", a(i, j));
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const ComplexMatrix& a) {
  out << a.size() << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out << (j ? " " : "") << format_complex(a(i, j));
    out << '\n';
  }
}

}  // namespace equivar
