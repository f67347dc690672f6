// Copyright 2026 The otoc-lab Authors
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

#include "otoc_lab/parallel.h"

#include <cstdlib>
#include <string>

namespace otoc_lab {

std::size_t worker_count() {
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char *cap = std::getenv("OTOC_LAB_THREADS")) {
        try {
            long value = std::stol(cap);
            if (value >= 1) {
                workers = std::min(workers, static_cast<std::size_t>(value));
            }
        } catch (const std::exception &) {
            // Unparseable values leave the hardware default in place.
        }
    }
    return workers;
}

}  // namespace otoc_lab
