/*
 * Copyright 2026 The Stability Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef STABILITY_LAB_PARALLEL_H_
#define STABILITY_LAB_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace stability_lab {

// Worker count: STABILITY_LAB_THREADS if set to a positive integer, else the
// hardware concurrency (at least 1).
size_t WorkerCount();

// Calls body(i) for every i in [0, n), possibly concurrently. Each index is
// visited exactly once; callers write results into per-index slots, so the
// outcome does not depend on the number of workers.
void ParallelFor(size_t n, const std::function<void(size_t)>& body);

}  // namespace stability_lab

#endif  // STABILITY_LAB_PARALLEL_H_
