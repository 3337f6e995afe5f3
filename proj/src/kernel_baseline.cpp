#include "rssauc/kernel_baseline.hpp"

#include <algorithm>
#include <cmath>

#include "rssauc/errors.hpp"
#include "rssauc/special.hpp"

namespace rssauc {

namespace {

std::vector<double> pooled_values(const RankedSetSample& sample) {
    std::vector<double> out;
    out.reserve(sample.total_size());
    for (const auto& stratum : sample.strata)
        out.insert(out.end(), stratum.begin(), stratum.end());
    return out;
}

struct Bandwidths {
    double hx, hy, combined;
};

Bandwidths resolve_bandwidths(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                              const KernelConfig& config) {
    double hx, hy;
    if (config.rule == BandwidthRule::Fixed) {
        hx = config.bandwidth_x;
        hy = config.bandwidth_y;
        if (!(hx > 0.0) || !(hy > 0.0))
            throw ConfigError("fixed bandwidths must be positive");
    } else {
        hx = silverman_bandwidth(pooled_values(x_sample));
        hy = silverman_bandwidth(pooled_values(y_sample));
    }
    return {hx, hy, std::sqrt(hx * hx + hy * hy)};
}

}  // namespace

double quantile_type7(std::vector<double> values, double p) {
    if (values.empty()) throw DataError("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double h = (n - 1.0) * p;  // 0-based position
    double lo = std::floor(h);
    auto i = static_cast<std::size_t>(lo);
    if (i + 1 >= values.size()) return values.back();
    return values[i] + (h - lo) * (values[i + 1] - values[i]);
}

double silverman_bandwidth(const std::vector<double>& values) {
    if (values.size() < 2) throw DataError("bandwidth requires at least 2 values");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / (n - 1.0));
    double iqr = quantile_type7(values, 0.75) - quantile_type7(values, 0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (!(spread > 0.0)) throw DegenerateError("degenerate bandwidth: zero dispersion");
    return 0.9 * spread * std::pow(n, -0.2);
}

double kernel_auc(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                  const KernelConfig& config) {
    x_sample.validate();
    y_sample.validate();
    Bandwidths bw = resolve_bandwidths(x_sample, y_sample, config);
    std::vector<double> xs = pooled_values(x_sample);
    std::vector<double> ys = pooled_values(y_sample);
    double total = 0.0;
    for (double x : xs)
        for (double y : ys) total += normal_cdf((y - x) / bw.combined);
    return total / (static_cast<double>(xs.size()) * static_cast<double>(ys.size()));
}

ConfidenceInterval kernel_ci(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                             double level, const KernelConfig& config) {
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("level must lie in (0,1)");
    x_sample.validate();
    y_sample.validate();
    Bandwidths bw = resolve_bandwidths(x_sample, y_sample, config);

    // Smoothed projection values: V10 over X, V01 over Y, each averaging the
    // smoothed indicator against the opposite sample with RSS weights.
    const double m = static_cast<double>(x_sample.strata.size());
    const double n = static_cast<double>(y_sample.strata.size());

    double point = 0.0;
    std::vector<std::vector<double>> v10(x_sample.strata.size());
    std::vector<std::vector<double>> v01(y_sample.strata.size());
    for (std::size_t i = 0; i < x_sample.strata.size(); ++i)
        v10[i].assign(x_sample.strata[i].size(), 0.0);
    for (std::size_t r = 0; r < y_sample.strata.size(); ++r)
        v01[r].assign(y_sample.strata[r].size(), 0.0);

    for (std::size_t i = 0; i < x_sample.strata.size(); ++i) {
        const double wx = 1.0 / (m * static_cast<double>(x_sample.strata[i].size()));
        for (std::size_t j = 0; j < x_sample.strata[i].size(); ++j) {
            const double x = x_sample.strata[i][j];
            for (std::size_t r = 0; r < y_sample.strata.size(); ++r) {
                const double wy = 1.0 / (n * static_cast<double>(y_sample.strata[r].size()));
                for (std::size_t s = 0; s < y_sample.strata[r].size(); ++s) {
                    double phi = normal_cdf((y_sample.strata[r][s] - x) / bw.combined);
                    v10[i][j] += wy * phi;
                    v01[r][s] += wx * phi;
                    point += wx * wy * phi;
                }
            }
        }
    }

    double s10 = 0.0;
    for (auto& row : v10) {
        const double k = static_cast<double>(row.size());
        if (k < 2.0) throw DegenerateError("kernel interval requires every stratum count > 1");
        double mean = 0.0;
        for (double v : row) mean += v;
        mean /= k;
        double ss = 0.0;
        for (double v : row) ss += (v - mean) * (v - mean);
        s10 += ss / (m * (k - 1.0));
    }
    double s01 = 0.0;
    for (auto& row : v01) {
        const double l = static_cast<double>(row.size());
        if (l < 2.0) throw DegenerateError("kernel interval requires every stratum count > 1");
        double mean = 0.0;
        for (double v : row) mean += v;
        mean /= l;
        double ss = 0.0;
        for (double v : row) ss += (v - mean) * (v - mean);
        s01 += ss / (n * (l - 1.0));
    }

    const double nx = static_cast<double>(x_sample.total_size());
    const double ny = static_cast<double>(y_sample.total_size());
    double s2 = (ny * s10 + nx * s01) / (nx + ny);
    if (!(s2 > 0.0)) throw DegenerateError("degenerate sample: zero smoothed variance");
    double se = std::sqrt(s2 * (nx + ny) / (nx * ny));

    double z = normal_quantile(0.5 * (1.0 + level));
    ConfidenceInterval ci;
    ci.level = level;
    ci.point = point;
    ci.lower = point - z * se;
    ci.upper = point + z * se;
    if (ci.lower < 0.0) {
        ci.lower = 0.0;
        ci.clipped_lower = true;
    }
    if (ci.upper > 1.0) {
        ci.upper = 1.0;
        ci.clipped_upper = true;
    }
    return ci;
}

}  // namespace rssauc
