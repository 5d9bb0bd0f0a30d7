//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_ERROR_H_
#define CHEMAUG_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chemaug {

enum class ErrorCode {
  // SMILES
  kUnclosedRing,
  kUnbalancedParenthesis,
  kUnknownElement,
  kValenceError,
  kSmilesSyntax,
  kUnsupportedFeature,
  // CIF
  kMissingCellParameter,
  kMissingAtomLoop,
  kBadNumber,
  kPartialOccupancyUnsupported,
  // patterns
  kPatternSyntaxError,
  // tables
  kMissingSmilesColumn,
  kEmptyTable,
  // crystal
  kBadScale,
  kUnknownStrategy,
  // fingerprints
  kKindMismatch,
  kLengthMismatch,
  // pipeline
  kTooFewRecords,
  kBadK,
  kInconsistentConfig,
  kIoError,
  kMalformedRecord,
  // generic
  kIndexOutOfRange,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. offset() is a byte offset into the
// text being parsed, when there is one.
class Error: public std::runtime_error {
public:
  Error(ErrorCode code, std::string message,
        std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace chemaug

#endif  // CHEMAUG_ERROR_H_
