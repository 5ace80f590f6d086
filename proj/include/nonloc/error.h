// Copyright 2026 The nonloc Authors
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

#ifndef NONLOC_ERROR_H
#define NONLOC_ERROR_H

#include <stdexcept>
#include <string>

namespace nonloc {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define NONLOC_DEFINE_ERROR(Name)              \
    struct Name : Error {                      \
        explicit Name(const std::string &what) \
            : Error(#Name ": " + what) {       \
        }                                      \
    }

NONLOC_DEFINE_ERROR(DimensionMismatch);
NONLOC_DEFINE_ERROR(InvalidArgument);
NONLOC_DEFINE_ERROR(OptimizerDidNotConverge);
NONLOC_DEFINE_ERROR(SignalingDistribution);
NONLOC_DEFINE_ERROR(DegenerateSettings);
NONLOC_DEFINE_ERROR(NonUniqueSolution);
NONLOC_DEFINE_ERROR(VanishingSuccess);
NONLOC_DEFINE_ERROR(IdenticallyZeroPolynomial);
NONLOC_DEFINE_ERROR(IdenticallyZeroF);
NONLOC_DEFINE_ERROR(DegenerateX);
NONLOC_DEFINE_ERROR(SingularDenominator);
NONLOC_DEFINE_ERROR(NotEntangled);
NONLOC_DEFINE_ERROR(NumericalFailure);
NONLOC_DEFINE_ERROR(ParseError);

#undef NONLOC_DEFINE_ERROR

}  // namespace nonloc

#endif  // NONLOC_ERROR_H
