#include "rssauc/rss.hpp"

#include <algorithm>

#include "rssauc/errors.hpp"

namespace rssauc {

void SyntheticSource::draw_set(int n, Rng& rng, std::vector<RankedUnitRecord>& out) {
    out.clear();
    out.reserve(static_cast<std::size_t>(n));
    const double mean = (group_ == Group::X) ? pop_.mean_x : pop_.mean_y;
    const double sd = (group_ == Group::X) ? pop_.sd_x : pop_.sd_y;
    for (int i = 0; i < n; ++i) {
        double v = (group_ == Group::X) ? pop_.draw_x(rng) : pop_.draw_y(rng);
        out.push_back({v, concomitant_value(v, mean, sd, rho_, rng)});
    }
}

FiniteSource::FiniteSource(const std::vector<double>& values,
                           const std::vector<double>& concomitants)
    : values_(&values), concomitants_(&concomitants) {
    if (values.size() != concomitants.size())
        throw DataError("finite source: value and concomitant columns differ in length");
    if (values.empty()) throw DataError("finite source: empty population group");
}

void FiniteSource::draw_set(int n, Rng& rng, std::vector<RankedUnitRecord>& out) {
    const auto size = static_cast<std::uint64_t>(values_->size());
    if (static_cast<std::uint64_t>(n) > size)
        throw DataError("finite source: population group smaller than the ranking set size");
    out.clear();
    out.reserve(static_cast<std::size_t>(n));
    std::vector<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(n));
    while (chosen.size() < static_cast<std::size_t>(n)) {
        std::uint64_t idx = rng.below(size);
        if (std::find(chosen.begin(), chosen.end(), idx) != chosen.end()) continue;
        chosen.push_back(idx);
        out.push_back({(*values_)[idx], (*concomitants_)[idx]});
    }
}

RankedSetSample draw_rss(UnitSource& source, const AllocationPlan& plan, Rng& rng) {
    plan.validate();
    const int n = plan.set_size();
    RankedSetSample sample;
    sample.strata.resize(static_cast<std::size_t>(n));
    std::vector<RankedUnitRecord> set;
    for (int r = 0; r < n; ++r) {
        auto& stratum = sample.strata[static_cast<std::size_t>(r)];
        stratum.reserve(static_cast<std::size_t>(plan.counts[static_cast<std::size_t>(r)]));
        for (int s = 0; s < plan.counts[static_cast<std::size_t>(r)]; ++s) {
            source.draw_set(n, rng, set);
            // Random permutation first so that equal concomitants end up in
            // uniformly random order under the stable sort.
            rng.shuffle(set.begin(), set.end());
            std::stable_sort(set.begin(), set.end(),
                             [](const RankedUnitRecord& a, const RankedUnitRecord& b) {
                                 return a.concomitant < b.concomitant;
                             });
            stratum.push_back(set[static_cast<std::size_t>(r)].value);
        }
    }
    return sample;
}

RankedSetSample draw_brss(UnitSource& source, int set_size, int cycles, Rng& rng) {
    return draw_rss(source, AllocationPlan::balanced(set_size, cycles), rng);
}

RankedSetSample draw_srs(UnitSource& source, int count, Rng& rng) {
    return draw_rss(source, AllocationPlan::balanced(1, count), rng);
}

}  // namespace rssauc
