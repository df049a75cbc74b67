#include "hamcover/random_gen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamcover {

namespace {

std::uint64_t splitmix64(std::uint64_t &x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(RngSeed seed) {
    std::uint64_t x = seed.base ^ splitmix64(seed.stream);
    for (auto &word : s_) {
        word = splitmix64(x);
    }
}

Rng::result_type Rng::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = 0;
    do {
        x = (*this)();
    } while (x >= limit);
    return x % bound;
}

Graph sample_gnp(std::size_t n, double p, RngSeed seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("edge probability must lie in [0,1], got " + std::to_string(p));
    }
    Rng rng(seed);
    std::vector<Edge> edges;
    if (n <= 4096) {
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (rng.uniform() < p) {
                    edges.emplace_back(u, v);
                }
            }
        }
        return Graph::build(n, edges);
    }
    if (p == 0.0) {
        return Graph::build(n, edges);
    }
    // Batagelj-Brandes skipping over pairs (v, w) with w < v.
    const double log_q = std::log1p(-p);
    long long v = 1;
    long long w = -1;
    const auto nn = static_cast<long long>(n);
    while (v < nn) {
        if (p == 1.0) {
            w += 1;
        } else {
            const double r = 1.0 - rng.uniform();  // in (0, 1]
            w += 1 + static_cast<long long>(std::floor(std::log(r) / log_q));
        }
        while (w >= v && v < nn) {
            w -= v;
            ++v;
        }
        if (v < nn) {
            edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
        }
    }
    return Graph::build(n, edges);
}

ExpanderParams expander_params(std::size_t n, double s) {
    if (n < 2) {
        throw std::invalid_argument("expander parameters need n >= 2");
    }
    if (!(s > 1.0)) {
        throw std::invalid_argument("expansion factor must exceed 1, got " + std::to_string(s));
    }
    const double ln_n = std::log(static_cast<double>(n));
    const double ln_s = std::log(s);
    ExpanderParams out;
    out.s = s;
    out.g = 4.0 * static_cast<double>(n) * ln_s / (s * ln_n);
    out.l_raw = static_cast<double>(n) * ln_s / (3000.0 * ln_n);
    out.l = std::max(out.l_raw, 1.0);
    out.asymptotic_regime = out.l_raw >= 1.0;
    out.alpha = ln_s / ln_n;
    return out;
}

ExpanderParams expander_params_for_gnp(std::size_t n, double p) {
    const double np = static_cast<double>(n) * p;
    if (!(np > 1.0)) {
        throw std::invalid_argument("expander parameters for G(n,p) need np > 1, got np = " + std::to_string(np));
    }
    double s = std::pow(np, 0.2);
    s -= (std::pow(s, 5) - np) / (5.0 * std::pow(s, 4));  // one Newton step: exact on perfect fifth powers
    return expander_params(n, s);
}

}  // namespace hamcover
