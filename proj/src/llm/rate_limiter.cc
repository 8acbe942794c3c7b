// Copyright 2026 The transcheck Authors
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

#include "transcheck/llm/rate_limiter.h"

#include <algorithm>
#include <thread>

namespace transcheck::llm {

RateLimiter::RateLimiter(double per_minute, double burst)
    : per_second_(per_minute / 60.0),
      burst_(std::max(1.0, burst)),
      tokens_(std::max(1.0, burst)) {}

RateLimiter::Clock::duration RateLimiter::Reserve(Clock::time_point now) {
  if (per_second_ <= 0) {
    return Clock::duration::zero();
  }
  std::lock_guard<std::mutex> lock(mu_);
  if (started_) {
    double elapsed = std::chrono::duration<double>(now - last_).count();
    tokens_ = std::min(burst_, tokens_ + std::max(0.0, elapsed) * per_second_);
  }
  started_ = true;
  last_ = now;
  tokens_ -= 1.0;
  if (tokens_ >= 0) {
    return Clock::duration::zero();
  }
  return std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(-tokens_ / per_second_));
}

void RateLimiter::Acquire() {
  auto wait = Reserve(Clock::now());
  if (wait > Clock::duration::zero()) {
    std::this_thread::sleep_for(wait);
  }
}

}  // namespace transcheck::llm
