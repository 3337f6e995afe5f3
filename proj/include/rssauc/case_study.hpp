#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rssauc/simulate.hpp"

namespace rssauc {

enum class Orientation { HigherIsDiseased, LowerIsDiseased };

Orientation orientation_from_string(const std::string& name);

struct ColumnMap {
    std::string marker = "marker";
    std::string disease = "disease";
    std::string concomitant = "concomitant";
};

// A dataset treated as the "true" population for finite-population
// resampling studies. Markers are oriented so that higher indicates disease.
struct PopulationDataset {
    std::vector<double> x_values, x_concomitants;  // non-diseased
    std::vector<double> y_values, y_concomitants;  // diseased
    std::size_t dropped_rows = 0;

    // Population AUC with the TieHalf kernel (strict phi is ill-defined as
    // ground truth under ties).
    double population_auc() const;
};

PopulationDataset load_dataset(const std::string& path, const ColumnMap& columns,
                               Orientation orientation);

struct CaseStudyConfig {
    std::vector<Method> methods{Method::SrsEl, Method::BrssEl};
    std::vector<SizePair> sizes;
    std::vector<int> set_sizes{2};
    std::vector<double> p_ys{0.5};
    int replicates = 5000;
    double level = 0.95;
    std::uint64_t seed = 0;
    int workers = 0;
    Kernel kernel = Kernel::TieHalf;
};

// Resampling sweep over the dataset; coverage is measured against the
// dataset's own population AUC.
std::vector<CellSummary> run_case_sweep(const PopulationDataset& dataset,
                                        const CaseStudyConfig& config);

}  // namespace rssauc
