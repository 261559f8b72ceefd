// Copyright 2026 The hubvqe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "util/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "util/errors.hpp"

namespace hubvqe {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  std::string out(buf, end);
  // Python switches to exponent notation below 1e-4 and from 1e16 upwards.
  const double ax = std::fabs(x);
  if (ax != 0.0 && (ax < 1e-4 || ax >= 1e16)) {
    auto [e2, ec2] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific);
    out.assign(buf, e2);
    // to_chars writes "1e-05" already; keep mantissa trimmed.
    return out;
  }
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

double round_to(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  double r = std::round(x * scale) / scale;
  if (r == 0.0) r = 0.0;
  return r;
}

std::string format_param_list(std::span<const double> params) {
  std::string out = "[";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += format_real(round_to(params[i], 6));
  }
  out += "]";
  return out;
}

double parse_real(std::string_view text) {
  const std::string t = trim(text);
  if (t == "nan" || t == "NaN") return std::nan("");
  if (t == "inf") return INFINITY;
  if (t == "-inf") return -INFINITY;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("not a number: '" + t + "'", 0);
  }
  return v;
}

std::vector<double> parse_param_list(std::string_view text) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw ParseError("parameter list must be bracketed: '" + t + "'", 0);
  }
  std::string_view inner(t.data() + 1, t.size() - 2);
  std::vector<double> out;
  if (trim(inner).empty()) return out;
  for (const auto& piece : split(inner, ',')) out.push_back(parse_real(piece));
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

}  // namespace hubvqe
