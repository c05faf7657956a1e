#ifndef KLEIN_SAMPLING_HPP
#define KLEIN_SAMPLING_HPP

#include "geometry.hpp"
#include "klein_config.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace klein {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-suite seed derived from the master seed and a fixed suite counter.
inline std::uint64_t suite_seed(std::uint64_t master, std::uint64_t suite_index) {
    return splitmix64(master + suite_index);
}

class SamplingFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Draws integer points with coordinates in [-97, 97] and rejects those on the
/// special loci of the Klein configuration: coordinate planes, the 30 lines, the
/// 10 quadrics, the 60 points, and points already handed out.
class PointSampler {
public:
    PointSampler(std::uint64_t seed, const KleinConfiguration* config) : rng_(seed), config_(config) {}

    std::size_t rejected() const noexcept { return rejected_; }

    bool degenerate(const ProjPoint& p) const {
        for (std::size_t k = 0; k < 4; ++k)
            if (p[k].is_zero()) return true;
        for (const auto& q : issued_)
            if (q == p) return true;
        if (!config_) return false;
        for (const auto& q : config_->points)
            if (q == p) return true;
        for (const auto& l : config_->lines)
            if (l.contains(p)) return true;
        for (const auto& q : config_->quadrics)
            if (evaluate(q, p).is_zero()) return true;
        return false;
    }

    ProjPoint next(std::size_t max_tries = 1000) {
        std::uniform_int_distribution<long> dist(-97, 97);
        for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
            std::array<GaussianRational, 4> c;
            bool zero = true;
            for (auto& v : c) {
                v = GaussianRational(dist(rng_));
                zero = zero && v.is_zero();
            }
            if (zero) {
                ++rejected_;
                continue;
            }
            ProjPoint p(c);
            if (degenerate(p)) {
                ++rejected_;
                continue;
            }
            issued_.push_back(p);
            return p;
        }
        throw SamplingFailed("no non-degenerate point after " + std::to_string(max_tries) + " draws");
    }

    /// Forgets previously issued points (so a fresh tuple may reuse coordinates).
    void reset_issued() { issued_.clear(); }

private:
    std::mt19937_64 rng_;
    const KleinConfiguration* config_;
    std::vector<ProjPoint> issued_;
    std::size_t rejected_ = 0;
};

}  // namespace klein

#endif  // KLEIN_SAMPLING_HPP
