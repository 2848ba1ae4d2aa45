/*
 * Copyright 2026 The combsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <bit>
#include <cstdlib>
#include <cstring>

#include "combsim/kernels.hpp"

namespace combsim::kernels {

namespace {

void and_into(Word *dst, const Word *src, size_t n)
{
    for (size_t i = 0; i < n; i++) dst[i] &= src[i];
}

void or_into(Word *dst, const Word *src, size_t n)
{
    for (size_t i = 0; i < n; i++) dst[i] |= src[i];
}

void andnot_into(Word *dst, const Word *src, size_t n)
{
    for (size_t i = 0; i < n; i++) dst[i] &= ~src[i];
}

bool equal(const Word *a, const Word *b, size_t n)
{
    for (size_t i = 0; i < n; i++) if (a[i] != b[i]) return false;
    return true;
}

bool subset(const Word *a, const Word *b, size_t n)
{
    for (size_t i = 0; i < n; i++) if (a[i] & ~b[i]) return false;
    return true;
}

bool intersects(const Word *a, const Word *b, size_t n)
{
    for (size_t i = 0; i < n; i++) if (a[i] & b[i]) return true;
    return false;
}

bool any(const Word *a, size_t n)
{
    for (size_t i = 0; i < n; i++) if (a[i]) return true;
    return false;
}

size_t popcount(const Word *a, size_t n)
{
    size_t c = 0;
    for (size_t i = 0; i < n; i++) c += std::popcount(a[i]);
    return c;
}

const Table scalar_table = {
    "scalar", and_into, or_into, andnot_into, equal, subset, intersects, any, popcount,
};

}

const Table &scalar()
{
    return scalar_table;
}

const Table &active()
{
    static const Table *chosen = [] {
        const char *env = std::getenv("COMBSIM_SIMD");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_table;
        const Table *t = avx2();
        return t != nullptr ? t : &scalar_table;
    }();
    return *chosen;
}

}
