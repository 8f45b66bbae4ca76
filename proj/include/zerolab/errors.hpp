// Copyright 2026 The zerolab Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace zerolab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ZEROLAB_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

ZEROLAB_DEFINE_ERROR(ChartSingular);
ZEROLAB_DEFINE_ERROR(UnsupportedDimension);
ZEROLAB_DEFINE_ERROR(DegreeTooLarge);
ZEROLAB_DEFINE_ERROR(DomainError);
ZEROLAB_DEFINE_ERROR(SingularArgument);
ZEROLAB_DEFINE_ERROR(ConvergenceFailure);
ZEROLAB_DEFINE_ERROR(TooFewSamples);
ZEROLAB_DEFINE_ERROR(SchemaMismatch);
ZEROLAB_DEFINE_ERROR(ConfigError);
ZEROLAB_DEFINE_ERROR(IntegrationUnstable);
ZEROLAB_DEFINE_ERROR(QuadratureSuspect);
ZEROLAB_DEFINE_ERROR(TooManyFailures);

#undef ZEROLAB_DEFINE_ERROR

}  // namespace zerolab
