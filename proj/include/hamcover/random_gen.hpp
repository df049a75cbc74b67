#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "hamcover/graph.hpp"

namespace hamcover {

/// (base, stream) pair; together they fully determine every random draw.
struct RngSeed {
    std::uint64_t base = 0;
    std::uint64_t stream = 0;
};

/// xoshiro256** (Blackman & Vigna), state expanded from the seed with splitmix64.
///
/// Used instead of <random> engines plus distributions because distribution
/// output is implementation-defined; this generator and its helpers produce the
/// same sequence on every platform.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(RngSeed seed);
    explicit Rng(std::uint64_t base, std::uint64_t stream = 0) : Rng(RngSeed{base, stream}) {}

    result_type operator()();
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform();
    /// Uniform in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound);

private:
    std::array<std::uint64_t, 4> s_{};
};

/// G(n,p). For n <= 4096 one uniform draw per pair in lexicographic (u,v)
/// order; above that, geometric skips over the same pair order.
Graph sample_gnp(std::size_t n, double p, RngSeed seed);

struct ExpanderParams {
    double s = 1.0;      // expansion factor
    double g = 0.0;      // boundary: 4 n ln s / (s ln n)
    double l = 1.0;      // frame: n ln s / (3000 ln n), clamped to >= 1
    double l_raw = 0.0;  // frame before clamping
    double alpha = 0.0;  // ln s / ln n
    bool asymptotic_regime = true;  // false when the raw frame fell below 1
};

/// Parameters of an s-expander on n vertices. Requires n >= 2 and s > 1.
ExpanderParams expander_params(std::size_t n, double s);

/// s = (np)^(1/5) and the matching g, l. Requires np > 1.
ExpanderParams expander_params_for_gnp(std::size_t n, double p);

}  // namespace hamcover
