// Copyright 2026 The dicke-sim Authors
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

#ifndef DICKE_ERRORS_HPP
#define DICKE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dicke {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the range an operation accepts.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// A state vector or matrix with zero norm was supplied where a state is required.
class DegenerateStateError : public Error {
   public:
    using Error::Error;
};

/// Conditioning on an outcome whose probability is below the zero-probability threshold.
class ZeroProbabilityError : public Error {
   public:
    using Error::Error;
};

/// A Kraus set that is not complete, or a basis that is not orthonormal.
class InvalidMeasurementError : public Error {
   public:
    using Error::Error;
};

/// Dense oracle request above the configured qubit cap.
class ResourceLimitError : public Error {
   public:
    using Error::Error;
};

/// A dense state that does not lie in the symmetric subspace.
class NotSymmetricError : public Error {
   public:
    NotSymmetricError(const std::string &what, double residual) : Error(what), residual_(residual) {
    }
    double residual() const noexcept {
        return residual_;
    }

   private:
    double residual_;
};

/// Malformed or inconsistent configuration document.
class ConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace dicke

#endif  // DICKE_ERRORS_HPP
