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

#ifndef COMBSIM_STATE_SET_HPP
#define COMBSIM_STATE_SET_HPP

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

#include "combsim/kernels.hpp"

namespace combsim {

/**
 * Fixed-universe bitset over dense indices [0, size).
 * Bits past size are always zero.
 */
class StateSet
{
public:
    using Word = kernels::Word;

    StateSet() = default;
    explicit StateSet(size_t size, bool full = false) : size_(size), words_((size + 63) / 64, 0)
    {
        if (full) fill();
    }

    size_t size() const { return size_; }

    bool test(size_t i) const
    {
        assert(i < size_);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    bool operator[](size_t i) const { return test(i); }

    void set(size_t i)
    {
        assert(i < size_);
        words_[i >> 6] |= Word(1) << (i & 63);
    }

    void reset(size_t i)
    {
        assert(i < size_);
        words_[i >> 6] &= ~(Word(1) << (i & 63));
    }

    void assign(size_t i, bool v) { v ? set(i) : reset(i); }

    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    void fill()
    {
        std::fill(words_.begin(), words_.end(), ~Word(0));
        trim();
    }

    size_t count() const { return kernels::active().popcount(words_.data(), words_.size()); }
    bool any() const { return kernels::active().any(words_.data(), words_.size()); }
    bool none() const { return !any(); }

    StateSet &operator&=(const StateSet &o)
    {
        assert(size_ == o.size_);
        kernels::active().and_into(words_.data(), o.words_.data(), words_.size());
        return *this;
    }
    StateSet &operator|=(const StateSet &o)
    {
        assert(size_ == o.size_);
        kernels::active().or_into(words_.data(), o.words_.data(), words_.size());
        return *this;
    }
    StateSet &operator-=(const StateSet &o)
    {
        assert(size_ == o.size_);
        kernels::active().andnot_into(words_.data(), o.words_.data(), words_.size());
        return *this;
    }

    friend StateSet operator&(StateSet a, const StateSet &b) { return a &= b; }
    friend StateSet operator|(StateSet a, const StateSet &b) { return a |= b; }
    friend StateSet operator-(StateSet a, const StateSet &b) { return a -= b; }

    StateSet complement() const
    {
        StateSet r(size_, true);
        r -= *this;
        return r;
    }

    bool operator==(const StateSet &o) const
    {
        return size_ == o.size_ && kernels::active().equal(words_.data(), o.words_.data(), words_.size());
    }

    bool subset_of(const StateSet &o) const
    {
        assert(size_ == o.size_);
        return kernels::active().subset(words_.data(), o.words_.data(), words_.size());
    }

    bool intersects(const StateSet &o) const
    {
        assert(size_ == o.size_);
        return kernels::active().intersects(words_.data(), o.words_.data(), words_.size());
    }

    // index of the lowest set bit at or after i, or size() if none
    size_t next(size_t i) const
    {
        if (i >= size_) return size_;
        size_t w = i >> 6;
        Word cur = words_[w] & (~Word(0) << (i & 63));
        while (true) {
            if (cur) return (w << 6) + std::countr_zero(cur);
            if (++w == words_.size()) return size_;
            cur = words_[w];
        }
    }

    size_t first() const { return next(0); }

    std::vector<uint32_t> to_vector() const
    {
        std::vector<uint32_t> r;
        for (size_t i = first(); i < size_; i = next(i + 1)) r.push_back((uint32_t)i);
        return r;
    }

    const std::vector<Word> &words() const { return words_; }

private:
    void trim()
    {
        if (size_ & 63) words_.back() &= (Word(1) << (size_ & 63)) - 1;
    }

    size_t size_ = 0;
    std::vector<Word> words_;
};

}

#endif
