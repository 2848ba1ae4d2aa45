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

#ifndef COMBSIM_KERNELS_HPP
#define COMBSIM_KERNELS_HPP

#include <cstddef>
#include <cstdint>

namespace combsim::kernels {

using Word = uint64_t;

/**
 * Word-array kernels behind StateSet. All arrays have length n.
 * Every variant must produce identical results; tests compare them.
 */
struct Table {
    const char *name;
    void (*and_into)(Word *dst, const Word *src, size_t n);
    void (*or_into)(Word *dst, const Word *src, size_t n);
    void (*andnot_into)(Word *dst, const Word *src, size_t n);   // dst &= ~src
    bool (*equal)(const Word *a, const Word *b, size_t n);
    bool (*subset)(const Word *a, const Word *b, size_t n);      // a & ~b == 0
    bool (*intersects)(const Word *a, const Word *b, size_t n);
    bool (*any)(const Word *a, size_t n);
    size_t (*popcount)(const Word *a, size_t n);
};

const Table &scalar();

// nullptr when not compiled in or not supported by this CPU
const Table *avx2();

/**
 * The table used by StateSet. Picked once: AVX2 when the CPU has it,
 * unless COMBSIM_SIMD=scalar is set in the environment.
 */
const Table &active();

}

#endif
