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

// Only this file is built with AVX2 enabled. It must not include headers
// with inline code shared with the rest of the library.

#include "combsim/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

namespace combsim::kernels {

namespace {

inline __m256i load(const Word *p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i *>(p)); }
inline void store(Word *p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i *>(p), v); }

void and_into_avx2(Word *dst, const Word *src, size_t n)
{
    size_t i = 0;
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(dst + i), load(src + i)));
    for (; i < n; i++) dst[i] &= src[i];
}

void or_into_avx2(Word *dst, const Word *src, size_t n)
{
    size_t i = 0;
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
    for (; i < n; i++) dst[i] |= src[i];
}

void andnot_into_avx2(Word *dst, const Word *src, size_t n)
{
    size_t i = 0;
    // andnot(x, y) computes ~x & y
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_andnot_si256(load(src + i), load(dst + i)));
    for (; i < n; i++) dst[i] &= ~src[i];
}

bool equal_avx2(const Word *a, const Word *b, size_t n)
{
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
        if (!_mm256_testz_si256(x, x)) return false;
    }
    for (; i < n; i++) if (a[i] != b[i]) return false;
    return true;
}

bool subset_avx2(const Word *a, const Word *b, size_t n)
{
    size_t i = 0;
    // testc(b, a) is 1 iff (~b & a) == 0
    for (; i + 4 <= n; i += 4) if (!_mm256_testc_si256(load(b + i), load(a + i))) return false;
    for (; i < n; i++) if (a[i] & ~b[i]) return false;
    return true;
}

bool intersects_avx2(const Word *a, const Word *b, size_t n)
{
    size_t i = 0;
    for (; i + 4 <= n; i += 4) if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
    for (; i < n; i++) if (a[i] & b[i]) return true;
    return false;
}

bool any_avx2(const Word *a, size_t n)
{
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i x = load(a + i);
        if (!_mm256_testz_si256(x, x)) return true;
    }
    for (; i < n; i++) if (a[i]) return true;
    return false;
}

// nibble lookup popcount, summed per 64-bit lane with sad_epu8
size_t popcount_avx2(const Word *a, size_t n)
{
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i acc = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = load(a + i);
        __m256i lo = _mm256_shuffle_epi8(lut, _mm256_and_si256(v, low));
        __m256i hi = _mm256_shuffle_epi8(lut, _mm256_and_si256(_mm256_srli_epi16(v, 4), low));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256()));
    }
    size_t c = (size_t)_mm256_extract_epi64(acc, 0) + (size_t)_mm256_extract_epi64(acc, 1) +
               (size_t)_mm256_extract_epi64(acc, 2) + (size_t)_mm256_extract_epi64(acc, 3);
    for (; i < n; i++) c += (size_t)__builtin_popcountll(a[i]);
    return c;
}

const Table avx2_table = {
    "avx2", and_into_avx2, or_into_avx2, andnot_into_avx2, equal_avx2,
    subset_avx2, intersects_avx2, any_avx2, popcount_avx2,
};

}

const Table *avx2()
{
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok ? &avx2_table : nullptr;
}

}

#else

namespace combsim::kernels {

const Table *avx2()
{
    return nullptr;
}

}

#endif
