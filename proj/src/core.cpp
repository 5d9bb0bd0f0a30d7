//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "chemaug/elements.h"
#include "chemaug/error.h"
#include "chemaug/hash.h"
#include "chemaug/rng.h"

namespace chemaug {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::kUnclosedRing:
    return "UnclosedRing";
  case ErrorCode::kUnbalancedParenthesis:
    return "UnbalancedParenthesis";
  case ErrorCode::kUnknownElement:
    return "UnknownElement";
  case ErrorCode::kValenceError:
    return "ValenceError";
  case ErrorCode::kSmilesSyntax:
    return "SmilesSyntax";
  case ErrorCode::kUnsupportedFeature:
    return "UnsupportedFeature";
  case ErrorCode::kMissingCellParameter:
    return "MissingCellParameter";
  case ErrorCode::kMissingAtomLoop:
    return "MissingAtomLoop";
  case ErrorCode::kBadNumber:
    return "BadNumber";
  case ErrorCode::kPartialOccupancyUnsupported:
    return "PartialOccupancyUnsupported";
  case ErrorCode::kPatternSyntaxError:
    return "PatternSyntaxError";
  case ErrorCode::kMissingSmilesColumn:
    return "MissingSmilesColumn";
  case ErrorCode::kEmptyTable:
    return "EmptyTable";
  case ErrorCode::kBadScale:
    return "BadScale";
  case ErrorCode::kUnknownStrategy:
    return "UnknownStrategy";
  case ErrorCode::kKindMismatch:
    return "KindMismatch";
  case ErrorCode::kLengthMismatch:
    return "LengthMismatch";
  case ErrorCode::kTooFewRecords:
    return "TooFewRecords";
  case ErrorCode::kBadK:
    return "BadK";
  case ErrorCode::kInconsistentConfig:
    return "InconsistentConfig";
  case ErrorCode::kIoError:
    return "IoError";
  case ErrorCode::kMalformedRecord:
    return "MalformedRecord";
  case ErrorCode::kIndexOutOfRange:
    return "IndexOutOfRange";
  case ErrorCode::kInvalidArgument:
    return "InvalidArgument";
  }
  return "Unknown";
}

namespace {
std::string format_error(ErrorCode code, const std::string &message,
                         std::optional<std::size_t> offset) {
  std::string out(to_string(code));
  if (offset)
    out += " at offset " + std::to_string(*offset);
  if (!message.empty())
    out += ": " + message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, std::string message,
             std::optional<std::size_t> offset)
    : std::runtime_error(format_error(code, message, offset)), code_(code),
      offset_(offset) { }

std::string hex_u64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

Eigen::Vector3d RngState::unit_vector() noexcept {
  const double z = 2.0 * uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return { r * std::cos(phi), r * std::sin(phi), z };
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view record_id,
                          std::string_view stream) noexcept {
  Fnv1a h;
  h.update(record_id);
  const std::uint8_t sep = 0;
  h.update(std::span(&sep, 1));
  h.update(stream);
  return seed ^ h.digest();
}

namespace {
constexpr std::array<std::string_view, kMaxAtomicNumber + 1> kSymbols = {
  "*",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
  "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
  "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
  "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
  "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
  "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
  "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
  "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
  "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};
}  // namespace

std::string_view element_symbol(int atomic_number) {
  if (atomic_number < 0 || atomic_number > kMaxAtomicNumber)
    throw Error(ErrorCode::kUnknownElement,
                "atomic number " + std::to_string(atomic_number));
  return kSymbols[atomic_number];
}

std::optional<int> element_from_symbol(std::string_view symbol) {
  for (int z = 0; z <= kMaxAtomicNumber; ++z)
    if (kSymbols[z] == symbol)
      return z;
  return std::nullopt;
}

}  // namespace chemaug
