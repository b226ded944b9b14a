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

#include "fbmsup/hurst.hpp"

#include <cmath>
#include <string>

#include "fbmsup/error.hpp"

namespace fbmsup {

Hurst::Hurst(double value) : value_(value) {
  if (!std::isfinite(value) || !(value > 0.0 && value < 1.0)) {
    throw DomainError("Hurst parameter must lie in (0, 1), got " +
                      std::to_string(value));
  }
}

}  // namespace fbmsup
