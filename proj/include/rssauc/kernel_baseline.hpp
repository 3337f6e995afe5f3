#pragma once

#include <vector>

#include "rssauc/el.hpp"
#include "rssauc/sample.hpp"

namespace rssauc {

enum class BandwidthRule { Silverman, Fixed };

struct KernelConfig {
    BandwidthRule rule = BandwidthRule::Silverman;
    // Used when rule == Fixed; computed per sample otherwise.
    double bandwidth_x = 0.0;
    double bandwidth_y = 0.0;
};

// Linear-interpolation (type-7) sample quantile: position (N-1)p + 1.
double quantile_type7(std::vector<double> values, double p);

// Silverman rule of thumb: h = 0.9 * min(s, iqr/1.34) * N^{-0.2}.
double silverman_bandwidth(const std::vector<double>& values);

// Gaussian-kernel-smoothed AUC:
//   (1/(Nx Ny)) sum_x sum_y Phi((y - x) / sqrt(hx^2 + hy^2)).
double kernel_auc(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                  const KernelConfig& config = {});

// Normal-approximation interval for the smoothed AUC. This construction is
// our own: the point estimate follows the smoothed MW form, and the standard
// error pools the two-sample projection variances of the smoothed
// indicators. It is a reimplementation, not a replication, of the published
// kernel-interval method it stands in for.
ConfidenceInterval kernel_ci(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                             double level, const KernelConfig& config = {});

}  // namespace rssauc
