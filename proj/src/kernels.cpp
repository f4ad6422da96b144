#include "fweno/kernels.hpp"

#include <stdexcept>

namespace fweno {

std::string variant_name(WenoVariant v) {
  switch (v) {
    case WenoVariant::JS: return "js";
    case WenoVariant::YC: return "yc";
    case WenoVariant::FWENO: return "fweno";
  }
  return "?";
}

WenoVariant parse_variant(const std::string& name) {
  if (name == "js") return WenoVariant::JS;
  if (name == "yc") return WenoVariant::YC;
  if (name == "fweno") return WenoVariant::FWENO;
  throw std::invalid_argument("unknown weight variant: " + name);
}

OpCountModel expected_ops(WenoVariant v, int r, const WenoParams& p) {
  const std::uint64_t R = r;
  OpCountModel m;
  // Shared tail: weight normalization, substencil values, final combination.
  const std::uint64_t tail_adds = (R - 1) + R * (R - 1) + (R - 1);
  const std::uint64_t tail_mults = R + R * R + R;
  switch (v) {
    case WenoVariant::JS:
      m.adds = R * (R * R + R - 4) / 2 + R + tail_adds;
      m.mults = R * (R * R + 3 * R - 4) / 2 + R * (p.s - 1) + tail_mults;
      break;
    case WenoVariant::YC:
      m.adds = R * (R * R + R - 4) / 2 + (2 * R - 2) + 2 * R + tail_adds;
      m.mults = R * (R * R + 3 * R - 4) / 2 + 2 * R + R * (2 * p.s1 + p.s2 - 2) + tail_mults;
      break;
    case WenoVariant::FWENO:
      m.adds = (5 * R - 6) + (2 * R - 2) + 2 * R + tail_adds;
      m.mults = (2 * R - 2) + 2 * R + R * (2 * p.s1 + p.s2 - 2) + tail_mults;
      break;
  }
  m.divs = R + 1;
  m.total = m.adds + m.mults;
  return m;
}

}  // namespace fweno
