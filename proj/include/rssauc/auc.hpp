#pragma once

#include <cstddef>
#include <vector>

#include "rssauc/sample.hpp"

namespace rssauc {

// Pairwise comparison kernel phi(x, y). Strict scores 1 iff x < y; TieHalf
// additionally scores 1/2 at x == y (for markers recorded to finite
// precision).
enum class Kernel { Strict, TieHalf };

// Sorted per-stratum view of a sample for O(log) ecdf queries. Stratum i
// carries weight 1/(m k_i), so strata contribute equally regardless of k_i.
class SortedStrata {
public:
    explicit SortedStrata(const RankedSetSample& sample);

    // Stokes-Sager empirical CDF: weighted fraction with value < t
    // (+ half ties for TieHalf).
    double cdf(double t, Kernel kernel) const;

    // Weighted fraction with value > t (+ half ties for TieHalf).
    double survival(double t, Kernel kernel) const;

    int set_size() const { return static_cast<int>(strata_.size()); }

private:
    std::vector<std::vector<double>> strata_;
    std::vector<double> weight_;
};

double ecdf_rss(const RankedSetSample& x_sample, double t, Kernel kernel);

// Mann-Whitney AUC estimate using F as the reference:
//   delta_hat = sum_{r,s} 1/(n l_r) * Fhat(Y_{[r]s}).
double mw_auc(const RankedSetSample& x_sample, const RankedSetSample& y_sample, Kernel kernel);

// Dual estimate using G as the reference: delta_hat* = sum 1/(m k_i) (1 - What_ij).
double mw_auc_dual(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                   Kernel kernel);

// Weighted residuals z_rs = 1 - Uhat_rs - delta0 feeding the EL machinery.
struct PlacementResiduals {
    std::vector<double> residuals;  // z_rs, stratum-major
    std::vector<double> weights;    // 1/(n l_r)
    std::vector<int> stratum;       // 0-based stratum index per entry
    std::vector<int> counts;        // l_1..l_n
    double delta0 = 0.0;

    double weighted_mean() const {
        double s = 0.0;
        for (std::size_t i = 0; i < residuals.size(); ++i) s += weights[i] * residuals[i];
        return s;
    }
};

PlacementResiduals placement_residuals(const RankedSetSample& x_sample,
                                       const RankedSetSample& y_sample, double delta0,
                                       Kernel kernel);

// Everything the EL machinery needs from a sample pair, computed once:
// placements of Y in Fhat, projection values of X against Y, and the dual
// placements of X in Ghat. All are independent of delta0.
struct PairedPlacements {
    std::vector<std::vector<double>> fhat_y;   // Fhat(Y_{[r]s}) = 1 - Uhat_rs = V01
    std::vector<std::vector<double>> v10_x;    // V10(X_{[i]j})
    std::vector<std::vector<double>> dual_x;   // 1 - What_ij
    std::vector<int> l_counts;                 // per Y stratum
    std::vector<int> k_counts;                 // per X stratum
    std::size_t n_x = 0, n_y = 0;
    double delta_hat = 0.0;
    double delta_hat_dual = 0.0;
};

PairedPlacements compute_placements(const RankedSetSample& x_sample,
                                    const RankedSetSample& y_sample, Kernel kernel);

}  // namespace rssauc
