// Copyright 2026 The idmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "idmatch/invariants.h"

#include <atomic>
#include <stdexcept>
#include <string>

namespace idmatch::invariants {
namespace {

std::atomic<bool> g_enabled{true};
std::atomic<std::uint64_t> g_checks{0};

}  // namespace

bool Enabled() { return g_enabled.load(std::memory_order_relaxed); }
void SetEnabled(bool on) { g_enabled.store(on, std::memory_order_relaxed); }

std::uint64_t ChecksPerformed() {
  return g_checks.load(std::memory_order_relaxed);
}

void Reset() { g_checks.store(0, std::memory_order_relaxed); }

void Check(bool ok, const char* what) {
  if (!Enabled()) return;
  g_checks.fetch_add(1, std::memory_order_relaxed);
  if (!ok) throw std::logic_error(std::string("invariant violated: ") + what);
}

}  // namespace idmatch::invariants
