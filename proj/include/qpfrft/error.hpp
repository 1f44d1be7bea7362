// Copyright 2026 The qpfrft Authors
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

namespace qpfrft {

/// Base class of every error raised by the library. Anything derived from it
/// is a caller error (bad sizes, out-of-range parameters, malformed input),
/// never an internal failure.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A sequence length that the operation cannot handle (e.g. not a power of two).
class LengthError : public Error {
   public:
    using Error::Error;
};

/// An integer parameter outside its admissible range.
class RangeError : public Error {
   public:
    using Error::Error;
};

/// A combination of parameters for which the requested construction does not exist.
class ParameterError : public Error {
   public:
    using Error::Error;
};

/// A register layout or state too large for the configured qubit limit.
class CapacityError : public Error {
   public:
    using Error::Error;
};

/// Malformed or non-finite file input.
class FormatError : public Error {
   public:
    using Error::Error;
};

}  // namespace qpfrft
