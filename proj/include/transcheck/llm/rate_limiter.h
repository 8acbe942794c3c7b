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

#ifndef TRANSCHECK_LLM_RATE_LIMITER_H_
#define TRANSCHECK_LLM_RATE_LIMITER_H_

#include <chrono>
#include <mutex>

namespace transcheck::llm {

// Token bucket admitting `per_minute` requests per minute with bursts of up
// to `burst`. A rate of 0 admits everything immediately.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;

  explicit RateLimiter(double per_minute, double burst = 1.0);

  // Blocks until a request may be sent.
  void Acquire();
  // Reserves a slot and returns how long the caller must wait before using
  // it. Exposed for tests.
  Clock::duration Reserve(Clock::time_point now);

 private:
  double per_second_;
  double burst_;
  double tokens_;
  Clock::time_point last_;
  bool started_ = false;
  std::mutex mu_;
};

}  // namespace transcheck::llm

#endif  // TRANSCHECK_LLM_RATE_LIMITER_H_
