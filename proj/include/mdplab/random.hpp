#pragma once

// Counter-based randomness: every draw is a pure function of (key, counter), so a
// stream can be replayed or split without sharing state between threads.

#include <cmath>
#include <cstdint>
#include <vector>

namespace mdplab {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream key from a parent key and a label.
constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t label) {
    return splitmix64(parent ^ splitmix64(label ^ 0x5851f42d4c957f2dULL));
}

/// Uniform double in [0, 1) determined by (key, counter).
inline double counter_uniform(std::uint64_t key, std::uint64_t counter) {
    const std::uint64_t bits = splitmix64(key ^ splitmix64(counter));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential view over a counter-based stream.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key) {}

    std::uint64_t key() const { return key_; }
    std::uint64_t position() const { return counter_; }

    double uniform() { return counter_uniform(key_, counter_++); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Exp(1) variate.
    double exponential() { return -std::log1p(-uniform()); }
    /// Uniform integer in [0, n).
    int index(int n) {
        const int i = static_cast<int>(uniform() * n);
        return i < n ? i : n - 1;
    }

    /// Point drawn uniformly from the (n-1)-simplex (normalized exponentials).
    std::vector<double> simplex(int n) {
        std::vector<double> out(static_cast<std::size_t>(n));
        double total = 0.0;
        for (auto& x : out) {
            x = exponential();
            total += x;
        }
        for (auto& x : out)
            x /= total;
        return out;
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (int i = static_cast<int>(items.size()) - 1; i > 0; --i)
            std::swap(items[static_cast<std::size_t>(i)],
                      items[static_cast<std::size_t>(index(i + 1))]);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace mdplab
