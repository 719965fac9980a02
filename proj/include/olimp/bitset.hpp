#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace olimp {

// Bit set over a universe fixed at construction. Backs version-space masks,
// so equality, hashing and subset tests are the hot operations. The word
// vector grows with the universe; there is no hard width limit.
class DynBitset {
public:
    DynBitset() = default;

    explicit DynBitset(int universe, bool ones = false)
        : n_(universe), w_((universe + 63) / 64, ones ? ~uint64_t{0} : 0) {
        trim();
    }

    int universe_size() const { return n_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool is_subset_of(const DynBitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    DynBitset& operator&=(const DynBitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    DynBitset& operator|=(const DynBitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    // this & ~o; the universe stays fixed so the tail needs no re-trim.
    DynBitset& subtract(const DynBitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
    friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }

    int find_first() const { return find_from(0); }
    int find_next(int i) const { return find_from(i + 1); }

    friend bool operator==(const DynBitset&, const DynBitset&) = default;

    size_t hash() const {
        size_t h = 0xcbf29ce484222325ull;
        for (uint64_t w : w_) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    const std::vector<uint64_t>& words() const { return w_; }

private:
    int find_from(int i) const {
        if (i >= n_) return -1;
        size_t wi = i >> 6;
        uint64_t cur = w_[wi] >> (i & 63);
        if (cur) return i + std::countr_zero(cur);
        for (++wi; wi < w_.size(); ++wi)
            if (w_[wi]) return int(wi * 64) + std::countr_zero(w_[wi]);
        return -1;
    }

    void trim() {
        if (n_ & 63) w_.back() &= (uint64_t{1} << (n_ & 63)) - 1;
    }

    int n_ = 0;
    std::vector<uint64_t> w_;
};

struct DynBitsetHash {
    size_t operator()(const DynBitset& b) const { return b.hash(); }
};

}  // namespace olimp

template <>
struct std::hash<olimp::DynBitset> {
    size_t operator()(const olimp::DynBitset& b) const { return b.hash(); }
};
