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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "zerolab/simd/kernels.hpp"

namespace zerolab::simd {

#ifndef ZEROLAB_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

namespace {

Isa detect() {
  Isa best = Isa::scalar;
  if (isa_available(Isa::avx2)) best = Isa::avx2;
  if (const char* env = std::getenv("ZEROLAB_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return best;
}

std::atomic<int>& selected() {
  static std::atomic<int> isa{static_cast<int>(detect())};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return avx2_kernels() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return static_cast<Isa>(selected().load()); }

void set_active_isa(Isa isa) {
  if (isa_available(isa)) selected().store(static_cast<int>(isa));
}

const KernelTable& kernels() {
  if (active_isa() == Isa::avx2) return *avx2_kernels();
  return scalar_kernels();
}

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (isa_available(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

}  // namespace zerolab::simd
