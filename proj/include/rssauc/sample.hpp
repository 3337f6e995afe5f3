#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "rssauc/errors.hpp"

namespace rssauc {

// A ranked set sample: stratum r (0-based here, 1-based in the notation)
// holds the quantified units judged (r+1)-th smallest in their ranking sets.
struct RankedSetSample {
    std::vector<std::vector<double>> strata;

    int set_size() const { return static_cast<int>(strata.size()); }

    std::size_t total_size() const {
        std::size_t n = 0;
        for (const auto& s : strata) n += s.size();
        return n;
    }

    std::vector<int> counts() const {
        std::vector<int> c;
        c.reserve(strata.size());
        for (const auto& s : strata) c.push_back(static_cast<int>(s.size()));
        return c;
    }

    bool balanced() const {
        if (strata.empty()) return true;
        for (const auto& s : strata)
            if (s.size() != strata.front().size()) return false;
        return true;
    }

    void validate() const {
        if (strata.empty()) throw DataError("ranked set sample has no strata");
        for (const auto& s : strata)
            if (s.empty()) throw DataError("ranked set sample has an empty stratum");
    }

    // An SRS of size n is a ranked set sample with set size 1.
    static RankedSetSample from_pooled(std::vector<double> values) {
        RankedSetSample sample;
        sample.strata.push_back(std::move(values));
        return sample;
    }
};

// Per-stratum quantification counts l_1..l_n for one group.
struct AllocationPlan {
    std::vector<int> counts;

    int set_size() const { return static_cast<int>(counts.size()); }

    int total() const {
        int n = 0;
        for (int c : counts) n += c;
        return n;
    }

    void validate() const {
        if (counts.empty()) throw ConfigError("allocation plan is empty");
        for (int c : counts)
            if (c < 1) throw ConfigError("allocation plan requires every stratum count >= 1");
    }

    static AllocationPlan balanced(int set_size, int cycles) {
        if (set_size < 1 || cycles < 1)
            throw ConfigError("balanced plan requires set size >= 1 and cycles >= 1");
        AllocationPlan plan;
        plan.counts.assign(static_cast<std::size_t>(set_size), cycles);
        return plan;
    }

    // Two-stratum design: l_1 = round(n_y * p_y) (ties to even), remainder
    // to stratum 2.
    static AllocationPlan two_stratum(int n_y, double p_y) {
        if (n_y < 2) throw ConfigError("two-stratum plan requires n_y >= 2");
        if (!(p_y > 0.0 && p_y < 1.0)) throw ConfigError("p_y must lie in (0,1)");
        int l1 = static_cast<int>(std::nearbyint(n_y * p_y));
        int l2 = n_y - l1;
        if (l1 < 1 || l2 < 1)
            throw ConfigError("two-stratum plan leaves an empty stratum; adjust p_y or n_y");
        AllocationPlan plan;
        plan.counts = {l1, l2};
        return plan;
    }
};

}  // namespace rssauc
