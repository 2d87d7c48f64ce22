// Copyright 2026 The kbudget Authors
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

namespace kbudget {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A register or extended space would exceed the configured size limit.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Gate arity, qubit indices or matrix are not acceptable.
class InvalidGateError : public Error {
  public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
  public:
    using Error::Error;
};

/// The requested operation is disabled by configuration.
class UnsupportedFeatureError : public Error {
  public:
    using Error::Error;
};

/// A circuit containing measurements has no inverse.
class NotInvertibleError : public Error {
  public:
    using Error::Error;
};

/// A parameter is outside its admissible range.
class ParameterError : public Error {
  public:
    using Error::Error;
};

} // namespace kbudget
