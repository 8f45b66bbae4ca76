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

#include <array>
#include <complex>
#include <cstdint>

namespace zerolab {

// Philox4x32-10 counter-based generator.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic substream identified by (master_seed, stream, attempt).
// Draws walk the first counter word, so a stream holds 2^33 doubles.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream, std::uint32_t attempt = 0);

  std::uint32_t next_u32();
  // Uniform on (0, 1].
  double uniform();
  double normal();
  // Real and imaginary parts i.i.d. N(0, 1/2).
  std::complex<double> complex_normal();

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint32_t attempt() const { return attempt_; }
  // Compact identifier recorded per trial.
  std::uint64_t substream_id() const;

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint32_t attempt_;
  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> ctr_{};
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace zerolab
