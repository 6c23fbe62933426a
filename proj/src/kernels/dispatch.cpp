// SPDX-License-Identifier: Apache-2.0
//
// chansim: stochastic UWB air-to-ground channel simulator
// Copyright (C) 2026 The chansim authors
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

#include "chansim/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace chansim::kernels
{
#if !CHANSIM_HAVE_AVX2
    const KernelTable *avx2_table() noexcept { return nullptr; }
#endif
#if !CHANSIM_HAVE_NEON
    const KernelTable *neon_table() noexcept { return nullptr; }
#endif

    namespace
    {
        bool cpu_has_avx2_fma() noexcept
        {
#if CHANSIM_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        }

        const KernelTable *table_for(Isa isa) noexcept
        {
            switch (isa)
            {
            case Isa::Scalar:
                return &scalar_table();
            case Isa::Avx2:
                return cpu_has_avx2_fma() ? avx2_table() : nullptr;
            case Isa::Neon:
                return neon_table();
            }
            return nullptr;
        }

        const KernelTable *initial_choice() noexcept
        {
            if (const char *forced = std::getenv("CHANSIM_SIMD"))
                if (const auto isa = parse_isa(forced))
                    if (const KernelTable *t = table_for(*isa))
                        return t;
            for (Isa isa : {Isa::Avx2, Isa::Neon})
                if (const KernelTable *t = table_for(isa))
                    return t;
            return &scalar_table();
        }

        std::atomic<const KernelTable *> &current() noexcept
        {
            static std::atomic<const KernelTable *> table{initial_choice()};
            return table;
        }
    }

    std::string_view to_string(Isa isa) noexcept
    {
        switch (isa)
        {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
        case Isa::Neon:
            return "neon";
        }
        return "unknown";
    }

    std::optional<Isa> parse_isa(std::string_view text) noexcept
    {
        for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
            if (text == to_string(isa))
                return isa;
        return std::nullopt;
    }

    bool available(Isa isa) noexcept { return table_for(isa) != nullptr; }

    std::vector<Isa> available_isas()
    {
        std::vector<Isa> out;
        for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
            if (available(isa))
                out.push_back(isa);
        return out;
    }

    const KernelTable &active() noexcept { return *current().load(std::memory_order_acquire); }

    bool select(Isa isa) noexcept
    {
        const KernelTable *t = table_for(isa);
        if (!t)
            return false;
        current().store(t, std::memory_order_release);
        return true;
    }
}
