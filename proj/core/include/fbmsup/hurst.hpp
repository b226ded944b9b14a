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

namespace fbmsup {

// Hurst parameter of a fractional Brownian motion, 0 < H < 1.
//
// H = 1/2 (standard Brownian motion) belongs to both regimes: every bound of
// either family applies there.
class Hurst {
 public:
  explicit Hurst(double value);

  double value() const { return value_; }

  // Var B_H(t) = t^{2H} grows at most linearly.
  bool subdiffusive() const { return value_ <= 0.5; }
  // Var B_H(t) grows at least linearly.
  bool superdiffusive() const { return value_ >= 0.5; }

  friend bool operator==(Hurst, Hurst) = default;

 private:
  double value_;
};

}  // namespace fbmsup
