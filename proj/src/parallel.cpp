// Copyright 2026 The adeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adeval/parallel.hpp"

#include <cstdlib>
#include <string>

namespace adeval {

unsigned worker_threads_from_env() {
  const char* env = std::getenv("ADEVAL_THREADS");
  if (!env || !*env) return 1;
  try {
    const long v = std::stol(env);
    if (v < 1) return 1;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return std::min(static_cast<unsigned>(v), hw);
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace adeval
