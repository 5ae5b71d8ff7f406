// Copyright 2026 The bginit Authors.
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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "bginit/kernels.hpp"
#include "kernels/variants.hpp"

namespace bginit::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(BGINIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_selection() {
  const KernelTable* widest = avx2_kernels();
  if (widest == nullptr) widest = &scalar_kernels();
  if (const char* env = std::getenv("BGINIT_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2_kernels() != nullptr) return avx2_kernels();
  }
  return widest;
}

std::atomic<const KernelTable*>& selection() {
  static std::atomic<const KernelTable*> current{initial_selection()};
  return current;
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
#if defined(BGINIT_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* t = avx2_kernels()) out.push_back(t);
  return out;
}

const KernelTable& active_kernels() {
  return *selection().load(std::memory_order_acquire);
}

bool select_isa(Isa isa) {
  const KernelTable* t = nullptr;
  switch (isa) {
    case Isa::kScalar:
      t = &scalar_kernels();
      break;
    case Isa::kAvx2:
      t = avx2_kernels();
      break;
  }
  if (t == nullptr) return false;
  selection().store(t, std::memory_order_release);
  return true;
}

}  // namespace bginit::kernels
