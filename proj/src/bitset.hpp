#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace subword::detail {

struct Bits {
    std::vector<std::uint64_t> w;

    Bits() = default;
    explicit Bits(std::size_t n) : w((n + 63) / 64, 0) {}

    void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
    bool operator==(const Bits&) const = default;
    bool intersects(const Bits& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
        return c;
    }
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto x : b.w) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

template <class T>
struct VecHash {
    std::size_t operator()(const std::vector<T>& v) const {
        std::size_t h = v.size();
        for (const auto& x : v) h ^= std::hash<T>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace subword::detail
