// Copyright 2026 The mscikdf Authors
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

#ifndef MSCIKDF_ERROR_HPP
#define MSCIKDF_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mscikdf {

enum class ErrorCode {
  kCodec,              // root entropy of unsupported length
  kDecode,             // unknown word / malformed mnemonic
  kIntegrity,          // mnemonic checksum mismatch
  kParameter,          // hardening parameters or passphrase out of range
  kResource,           // memory-hard step could not allocate
  kEncoding,           // context descriptor cannot be encoded
  kUnregisteredSlot,   // (algorithm, curve) not in the registry
  kSlotMismatch,       // finalizer applied to the wrong slot
  kDerivationFailure,  // rejection sampling exhausted
  kParse,              // text / hex / record parse failure
  kPrecondition,       // harness or API precondition violated
  kIo,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Base for every error raised by the library. Messages never carry secret
/// material.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Unknown word in a mnemonic. `position` is 1-based.
class WordError : public Error {
 public:
  WordError(std::size_t position, const std::string& what)
      : Error(ErrorCode::kDecode, what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A batch derivation aborted on the element at `index` (0-based).
class BatchError : public Error {
 public:
  BatchError(std::size_t index, ErrorCode cause, const std::string& what)
      : Error(cause, what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Malformed line in a vector file. `line` is 1-based.
class RecordParseError : public Error {
 public:
  RecordParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::kParse, what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mscikdf

#endif  // MSCIKDF_ERROR_HPP
