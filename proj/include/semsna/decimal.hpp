// Copyright 2026 The semsna Authors
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
#pragma once

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "semsna/error.hpp"

namespace semsna {

inline double to_double(double v) { return v; }
inline double to_double(const boost::multiprecision::cpp_rational& v) {
  return v.convert_to<double>();
}

/// xsd:decimal lexical form rounded to 12 significant digits: no exponent,
/// at least one fractional digit, no trailing zeros beyond it.
inline std::string format_decimal(double v) {
  if (!std::isfinite(v)) throw ContractViolation("non-finite metric value");
  if (v == 0) return "0.0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::scientific, 11);
  std::string_view sci(buf, static_cast<std::size_t>(res.ptr - buf));
  std::string out;
  if (sci.front() == '-') {
    out += '-';
    sci.remove_prefix(1);
  }
  auto e = sci.find('e');
  std::string digits;
  for (char c : sci.substr(0, e)) {
    if (c != '.') digits += c;
  }
  int exponent = std::atoi(std::string(sci.substr(e + 1)).c_str());
  // value = 0.digits * 10^(exponent + 1)
  int point = exponent + 1;
  const int n = static_cast<int>(digits.size());
  if (point <= 0) {
    out += "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
  } else if (point >= n) {
    out += digits + std::string(static_cast<std::size_t>(point - n), '0') +
           ".0";
  } else {
    out += digits.substr(0, static_cast<std::size_t>(point)) + "." +
           digits.substr(static_cast<std::size_t>(point));
  }
  while (out.size() > 2 && out.back() == '0' && out[out.size() - 2] != '.') {
    out.pop_back();
  }
  return out;
}

template <class Number>
std::string format_decimal(const Number& v) {
  return format_decimal(to_double(v));
}

}  // namespace semsna
