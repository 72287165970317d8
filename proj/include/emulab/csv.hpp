#pragma once

// Number formatting shared by the CSV writers and the solve printout:
// 12 significant digits, '.' decimal separator, locale-independent.

#include <cstdint>
#include <cstdio>
#include <string>

#include <emulab/types.hpp>

namespace emulab {

inline std::string format_number(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string format_count(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace emulab
