#pragma once
// Shared vocabulary for the ndplab libraries: typed errors, a reproducible
// counter-based random stream, and small integer helpers.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ndp {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Category of a failure. Every error raised by the library carries one.
enum class ErrorKind {
    OutOfBounds,  ///< coordinate or vertex outside its grid / graph
    Capacity,     ///< not enough room to place what was requested
    Placement,    ///< terminals are not where a primitive requires them
    Spacing,      ///< paths closer than the required distance
    Contract,     ///< a documented pre- or post-condition does not hold
    Partition,    ///< a family of sets is not a partition of its universe
    Parameter,    ///< an argument is out of its admissible range
    Domain,       ///< input outside the supported domain (e.g. not 5-regular)
    Threshold,    ///< a numeric inequality required by a bound fails
    Parse,        ///< malformed serialized input
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Throws Error(kind, message) unless cond holds.
inline void require(bool cond, ErrorKind kind, const std::string& message) {
    if (!cond) throw Error(kind, message);
}

/// SplitMix64 finalizer; also used to derive independent substreams.
inline u64 mix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a hash of a byte string (used for stream names and input digests).
inline u64 fnv1a(std::string_view s) {
    u64 h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Counter-based generator: the i-th output depends only on (key, i), so a
/// stream can be split by name without any shared mutable state.
class Rng {
public:
    using result_type = u64;
    explicit Rng(u64 seed, std::string_view stream = "") : key_(mix64(seed ^ fnv1a(stream))) {}

    /// Independent child stream identified by a name and an index.
    Rng split(std::string_view name, u64 index = 0) const {
        Rng child(0);
        child.key_ = mix64(key_ ^ mix64(fnv1a(name) + 0x632be59bd9b4e019ULL * (index + 1)));
        return child;
    }

    u64 operator()() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * (++counter_)); }
    static constexpr u64 min() { return 0; }
    static constexpr u64 max() { return ~u64{0}; }

    /// Uniform integer in [0, n) without modulo bias. n must be positive.
    u64 below(u64 n) {
        if (n == 0) throw Error(ErrorKind::Parameter, "Rng::below requires n > 0");
        const u64 limit = max() - max() % n;
        u64 v;
        do { v = (*this)(); } while (v >= limit);
        return v % n;
    }
    /// Uniform integer in [lo, hi].
    i64 uniform(i64 lo, i64 hi) { return lo + static_cast<i64>(below(static_cast<u64>(hi - lo) + 1)); }
    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    u64 key_;
    u64 counter_ = 0;
};

inline i64 ceil_div(i64 a, i64 b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

/// Parity-safe modulus (result in [0, m)).
inline i64 pmod(i64 a, i64 m) { return ((a % m) + m) % m; }

/// The logarithm used throughout the construction: base 2, clamped below
/// by 1 so that block lengths and thresholds never degenerate.
inline double log_m(double m) { return m <= 2.0 ? 1.0 : std::max(1.0, std::log2(m)); }

inline i64 ceil_to_i64(double x) { return static_cast<i64>(std::ceil(x - 1e-9)); }

}  // namespace ndp
