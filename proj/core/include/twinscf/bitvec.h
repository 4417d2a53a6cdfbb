// Copyright 2026 The twinscf Authors
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

#ifndef TWINSCF_BITVEC_H
#define TWINSCF_BITVEC_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace twinscf {

/// Fixed-length bit vector with word-parallel set operations.
///
/// Used both as a vertex set / adjacency row and as a vector over Z_2.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    BitVec(size_t n, std::initializer_list<size_t> bits) : BitVec(n) {
        for (size_t b : bits) set(b);
    }

    static BitVec full(size_t n) {
        BitVec r(n);
        for (auto &x : r.w_) x = ~uint64_t{0};
        r.trim();
        return r;
    }

    size_t size() const { return n_; }
    size_t num_words() const { return w_.size(); }
    const uint64_t *words() const { return w_.data(); }
    uint64_t *words() { return w_.data(); }

    bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
    void set(size_t i, bool v) {
        if (v) {
            set(i);
        } else {
            reset(i);
        }
    }
    void reset(size_t i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }
    void clear() {
        for (auto &x : w_) x = 0;
    }
    /// Clears bits [0, i).
    void reset_below(size_t i) {
        if (i > n_) i = n_;
        size_t k = i >> 6;
        for (size_t j = 0; j < k; j++) w_[j] = 0;
        if (k < w_.size() && (i & 63)) w_[k] &= ~uint64_t{0} << (i & 63);
    }

    size_t count() const {
        size_t c = 0;
        for (uint64_t x : w_) c += std::popcount(x);
        return c;
    }
    bool any() const {
        for (uint64_t x : w_)
            if (x) return true;
        return false;
    }
    bool none() const { return !any(); }

    /// Lowest set bit, or size() when empty.
    size_t first() const { return next(0); }
    /// Lowest set bit at index >= i, or size() when none.
    size_t next(size_t i) const {
        if (i >= n_) return n_;
        size_t k = i >> 6;
        uint64_t x = w_[k] & (~uint64_t{0} << (i & 63));
        while (true) {
            if (x) return (k << 6) + std::countr_zero(x);
            if (++k >= w_.size()) return n_;
            x = w_[k];
        }
    }

    template <typename F>
    void for_each(F &&f) const {
        for (size_t k = 0; k < w_.size(); k++) {
            uint64_t x = w_[k];
            while (x) {
                f((k << 6) + std::countr_zero(x));
                x &= x - 1;
            }
        }
    }

    std::vector<size_t> to_vector() const {
        std::vector<size_t> out;
        for_each([&](size_t i) { out.push_back(i); });
        return out;
    }

    BitVec &operator&=(const BitVec &o) {
        for (size_t k = 0; k < w_.size(); k++) w_[k] &= o.w_[k];
        return *this;
    }
    BitVec &operator|=(const BitVec &o) {
        for (size_t k = 0; k < w_.size(); k++) w_[k] |= o.w_[k];
        return *this;
    }
    BitVec &operator^=(const BitVec &o) {
        for (size_t k = 0; k < w_.size(); k++) w_[k] ^= o.w_[k];
        return *this;
    }
    /// this &= ~o
    BitVec &subtract(const BitVec &o) {
        for (size_t k = 0; k < w_.size(); k++) w_[k] &= ~o.w_[k];
        return *this;
    }
    BitVec operator&(const BitVec &o) const { return BitVec(*this) &= o; }
    BitVec operator|(const BitVec &o) const { return BitVec(*this) |= o; }
    BitVec operator^(const BitVec &o) const { return BitVec(*this) ^= o; }
    BitVec minus(const BitVec &o) const { return BitVec(*this).subtract(o); }
    BitVec complement() const {
        BitVec r(*this);
        for (auto &x : r.w_) x = ~x;
        r.trim();
        return r;
    }

    bool intersects(const BitVec &o) const {
        for (size_t k = 0; k < w_.size(); k++)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }
    size_t and_count(const BitVec &o) const {
        size_t c = 0;
        for (size_t k = 0; k < w_.size(); k++) c += std::popcount(w_[k] & o.w_[k]);
        return c;
    }
    bool is_subset_of(const BitVec &o) const {
        for (size_t k = 0; k < w_.size(); k++)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    bool operator==(const BitVec &o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec &o) const { return !(*this == o); }
    /// Lexicographic on words, usable as a map key.
    bool operator<(const BitVec &o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return w_ < o.w_;
    }

    size_t hash() const {
        uint64_t h = 0x9E3779B97F4A7C15ull ^ n_;
        for (uint64_t x : w_) {
            h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }

   private:
    void trim() {
        if (n_ & 63) w_.back() &= (uint64_t{1} << (n_ & 63)) - 1;
    }

    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

/// Bits [start, start + len) of b as a new vector of length len.
inline BitVec slice(const BitVec &b, size_t start, size_t len) {
    BitVec r(len);
    if (len == 0) return r;
    const uint64_t *src = b.words();
    size_t nw = b.num_words();
    size_t shift = start & 63;
    size_t base = start >> 6;
    uint64_t *dst = r.words();
    for (size_t k = 0; k < r.num_words(); k++) {
        uint64_t lo = base + k < nw ? src[base + k] : 0;
        uint64_t hi = (shift && base + k + 1 < nw) ? src[base + k + 1] : 0;
        dst[k] = shift ? (lo >> shift) | (hi << (64 - shift)) : lo;
    }
    if (len & 63) dst[r.num_words() - 1] &= (uint64_t{1} << (len & 63)) - 1;
    return r;
}

struct BitVecHash {
    size_t operator()(const BitVec &b) const { return b.hash(); }
};

}  // namespace twinscf

#endif
