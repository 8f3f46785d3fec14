// Copyright 2026 Google LLC
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

#pragma once

#include <cstdio>
#include <cstdlib>

// Debug-only invariant check. Compiled out under NDEBUG unless
// ROSBID_ENABLE_DCHECKS is defined.
#if !defined(NDEBUG) || defined(ROSBID_ENABLE_DCHECKS)
#define ROSBID_DCHECK(cond, msg)                                          \
  do {                                                                    \
    if (!(cond)) {                                                        \
      std::fprintf(stderr, "%s:%d: DCHECK failed: %s (%s)\n", __FILE__,   \
                   __LINE__, #cond, msg);                                 \
      std::abort();                                                       \
    }                                                                     \
  } while (0)
#else
#define ROSBID_DCHECK(cond, msg) \
  do {                           \
  } while (0)
#endif
