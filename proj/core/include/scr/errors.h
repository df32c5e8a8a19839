// Copyright 2026 The SCR Codec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCR_ERRORS_H_
#define SCR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace scr {

enum class ErrorCode {
  kShape,             // tensor / vector dimensions disagree
  kInvalidArgument,   // value outside its documented domain
  kBadMagic,
  kBadVersion,
  kTruncated,
  kCorruptStream,     // checksum, range decoder or length inconsistency
  kDigestMismatch,    // bitstream was produced with different weights
  kUnsupported,       // unknown layer type / mask mode / image format
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// All failures surfaced by the library are thrown as scr::Error so callers
// can dispatch on code() without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scr

#endif  // SCR_ERRORS_H_
