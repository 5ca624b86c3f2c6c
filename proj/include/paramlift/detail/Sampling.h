#pragma once

#include <random>

namespace paramlift {

template<typename Rng>
Valuation sampleInterior(Region const& region, Rng& rng) {
    constexpr long resolution = 1L << 20;
    std::uniform_int_distribution<long> step(1, resolution - 1);
    Valuation result;
    for (auto const& [name, interval] : region.bounds()) {
        if (interval.isDegenerate()) {
            result.emplace(name, interval.lower);
        } else {
            result.emplace(name, interval.lower + interval.width() * fraction(step(rng), resolution));
        }
    }
    return result;
}

}  // namespace paramlift
