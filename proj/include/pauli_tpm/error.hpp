// Copyright 2026 The pauli-tpm Authors
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

namespace ptpm {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Inputs outside an operation's domain (bad parameters, non-CP points,
/// malformed configuration).
class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// A channel whose pair sums p_i + p_j reach 1/2, so the map is not invertible
/// and the generator is undefined.
class SingularChannel : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

/// Relative entropy with supp(rho) not contained in supp(sigma).
class DivergentEntropy : public Error {
  public:
    using Error::Error;
};

/// Quadrature or root finding failed to converge.
class NumericalFailure : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace ptpm
