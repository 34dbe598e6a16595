#pragma once

// Argument value parsers for the su2tube command line.

#include <array>
#include <cctype>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace su2tube::cli {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline std::string strip(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

inline double parse_real(const std::string& text) {
  const std::string s = strip(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + text + "'");
  return v;
}

/// Accepts "2", "-3.5", "5i", "-i", "1+2i", "1.5e-3-2e2i".
inline std::complex<double> parse_complex(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw UsageError("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  const std::string re = cut == std::string::npos ? "" : body.substr(0, cut);
  std::string im = cut == std::string::npos ? body : body.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::array<double, 3> parse_triple(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError("expected three comma-separated values: '" + s + "'");
  return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
}

inline std::pair<double, double> parse_pair(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError("expected two comma-separated values: '" + s + "'");
  return {parse_real(parts[0]), parse_real(parts[1])};
}

inline std::vector<std::complex<double>> parse_path(const std::string& s) {
  std::vector<std::complex<double>> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_complex(p));
  if (out.size() < 2) throw UsageError("a path needs at least two points");
  return out;
}

/// "lo..hi".
inline std::pair<double, double> parse_range(const std::string& s) {
  const auto k = s.find("..");
  if (k == std::string::npos) throw UsageError("expected a range lo..hi: '" + s + "'");
  const double lo = parse_real(s.substr(0, k)), hi = parse_real(s.substr(k + 2));
  if (!(hi >= lo)) throw UsageError("empty range: '" + s + "'");
  return {lo, hi};
}

}  // namespace su2tube::cli
