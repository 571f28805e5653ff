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

#ifndef IDMATCH_INVARIANTS_H_
#define IDMATCH_INVARIANTS_H_

#include <cstdint>

namespace idmatch {

// Runtime checks on every constructed distribution. Enabled by default;
// a violation throws std::logic_error.
namespace invariants {

bool Enabled();
void SetEnabled(bool on);

// Number of simplex checks performed since the last Reset.
std::uint64_t ChecksPerformed();
void Reset();

// Throws std::logic_error if `ok` is false and checks are enabled.
void Check(bool ok, const char* what);

}  // namespace invariants
}  // namespace idmatch

#endif  // IDMATCH_INVARIANTS_H_
