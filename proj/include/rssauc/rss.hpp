#pragma once

#include <vector>

#include "rssauc/populations.hpp"
#include "rssauc/random.hpp"
#include "rssauc/sample.hpp"

namespace rssauc {

// Supplies the raw units (value + ranking concomitant) consumed by RSS:
// one ranking set of n units per call.
class UnitSource {
public:
    virtual ~UnitSource() = default;
    virtual void draw_set(int n, Rng& rng, std::vector<RankedUnitRecord>& out) = 0;
};

// Synthetic source: i.i.d. draws from one marginal of a PopulationPair with
// concomitants from the judgment-ranking model.
class SyntheticSource final : public UnitSource {
public:
    enum class Group { X, Y };

    SyntheticSource(const PopulationPair& pop, Group group, double rho)
        : pop_(pop), group_(group), rho_(rho) {}

    void draw_set(int n, Rng& rng, std::vector<RankedUnitRecord>& out) override;

private:
    PopulationPair pop_;
    Group group_;
    double rho_;
};

// Finite-population source: ranking sets are drawn without replacement
// within a set and with replacement across sets. The concomitant column of
// the dataset drives ranking directly.
class FiniteSource final : public UnitSource {
public:
    FiniteSource(const std::vector<double>& values, const std::vector<double>& concomitants);

    void draw_set(int n, Rng& rng, std::vector<RankedUnitRecord>& out) override;

private:
    const std::vector<double>* values_;
    const std::vector<double>* concomitants_;
};

// Generic RSS draw: for each stratum r and each of its counts[r] positions,
// rank a fresh set of n units by concomitant and quantify the (r+1)-th one.
// Concomitant ties are broken by a uniform random permutation.
RankedSetSample draw_rss(UnitSource& source, const AllocationPlan& plan, Rng& rng);

RankedSetSample draw_brss(UnitSource& source, int set_size, int cycles, Rng& rng);

inline RankedSetSample draw_urss(UnitSource& source, const AllocationPlan& plan, Rng& rng) {
    return draw_rss(source, plan, rng);
}

// SRS convenience: set size 1.
RankedSetSample draw_srs(UnitSource& source, int count, Rng& rng);

}  // namespace rssauc
