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

#include "trihybrid/parallel.hpp"
#include "trihybrid/types.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <vector>

namespace trihybrid
{
    int worker_count()
    {
        const char *env = std::getenv("TRIHYBRID_WORKERS");
        if (!env || !*env)
            return omp_get_max_threads();
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 4096)
            throw ConfigError(std::string("TRIHYBRID_WORKERS must be a positive integer, got '") + env + "'");
        return static_cast<int>(v);
    }

    void parallel_for(int count, int workers, const std::function<void(int)> &body)
    {
        std::vector<std::exception_ptr> errors(static_cast<size_t>(std::max(count, 0)));
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(workers, 1))
        for (int i = 0; i < count; ++i)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                errors[static_cast<size_t>(i)] = std::current_exception();
            }
        }
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }

} // namespace trihybrid
