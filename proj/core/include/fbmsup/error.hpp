// Copyright 2026 The fbmsup Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace fbmsup {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain on which a formula or bound is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Result not representable (e.g. kappa overflow as H -> 1).
class RangeError : public Error {
 public:
  using Error::Error;
};

// Root-finding bracket without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

// Objective or integrand returned a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Quadrature did not reach the requested tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// Circulant embedding or Cholesky factorization failed.
class SamplerError : public Error {
 public:
  using Error::Error;
};

}  // namespace fbmsup
