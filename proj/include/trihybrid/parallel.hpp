// SPDX-License-Identifier: Apache-2.0
//
// trihybrid - tri-hybrid multi-user MIMO precoding with pattern-reconfigurable antennas
// Copyright (C) 2026 The trihybrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TRIHYBRID_PARALLEL_HPP
#define TRIHYBRID_PARALLEL_HPP

#include <functional>

namespace trihybrid
{
    /// Worker count from TRIHYBRID_WORKERS, else the OpenMP default. Throws ConfigError
    /// if the variable is set to something other than a positive integer.
    int worker_count();

    /// Runs body(i) for i in [0, count) on up to `workers` threads. Each index must write
    /// only its own output slot. If bodies throw, the exception of the lowest index is rethrown.
    void parallel_for(int count, int workers, const std::function<void(int)> &body);

} // namespace trihybrid

#endif
