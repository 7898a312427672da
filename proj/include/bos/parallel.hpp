// Copyright 2026 The bos Authors.
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

#ifndef BOS_PARALLEL_HPP_
#define BOS_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace bos {

// Splits [0, n) into at most `threads` contiguous chunks and runs
// body(begin, end) on each. threads <= 1 runs inline. The first exception
// thrown by any chunk is rethrown after all chunks have finished.
void ParallelFor(std::size_t n, unsigned threads,
                 const std::function<void(std::size_t, std::size_t)> &body);

}  // namespace bos

#endif  // BOS_PARALLEL_HPP_
