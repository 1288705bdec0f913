// Copyright 2026 The Liftguard Authors
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

#ifndef LIFTGUARD_ERRORS_HPP_
#define LIFTGUARD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace liftguard {

// Base class for all validation and usage errors. The what() string always
// starts with the concrete error name so callers (and the CLI) can surface
// the violated invariant verbatim.
class Error : public std::runtime_error {
 public:
  Error(const std::string& name, const std::string& detail)
      : std::runtime_error(detail.empty() ? name : name + ": " + detail) {}
};

#define LIFTGUARD_DEFINE_ERROR(NAME)                          \
  class NAME : public Error {                                 \
   public:                                                    \
    explicit NAME(const std::string& detail = {})             \
        : Error(#NAME, detail) {}                             \
  }

LIFTGUARD_DEFINE_ERROR(NegativeEntry);
LIFTGUARD_DEFINE_ERROR(SumNotOne);
LIFTGUARD_DEFINE_ERROR(ZeroMarginal);
LIFTGUARD_DEFINE_ERROR(DimensionMismatch);
LIFTGUARD_DEFINE_ERROR(IndexOutOfRange);
LIFTGUARD_DEFINE_ERROR(DegenerateDraw);
LIFTGUARD_DEFINE_ERROR(EmptyInput);
LIFTGUARD_DEFINE_ERROR(EmptyHighRiskSet);
LIFTGUARD_DEFINE_ERROR(InvalidAlpha);
LIFTGUARD_DEFINE_ERROR(ConfigError);

#undef LIFTGUARD_DEFINE_ERROR

}  // namespace liftguard

#endif  // LIFTGUARD_ERRORS_HPP_
