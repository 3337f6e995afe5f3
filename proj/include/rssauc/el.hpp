#pragma once

#include <limits>
#include <span>

#include "rssauc/auc.hpp"
#include "rssauc/sample.hpp"

namespace rssauc {

// Which log-EL ratio form to use. Brss puts the multiplier directly on the
// residuals; Urss scales each residual by 1/(n l_r). On balanced samples the
// two produce the same log ratio (the multipliers differ by the factor n*l).
enum class ELForm { Brss, Urss };

struct LambdaResult {
    double lambda = 0.0;
    bool feasible = true;   // false: residuals all one sign (hull violation)
    bool all_zero = false;  // degenerate: every residual is exactly zero
};

// Solve sum_i e_i / (1 + lambda e_i) = 0 over the open interval where all
// denominators stay positive. The equation is monotone there; safeguarded
// Newton with a bisection fallback, tolerance 1e-10.
LambdaResult solve_lambda_effective(std::span<const double> effective_residuals);

LambdaResult solve_lambda(const PlacementResiduals& residuals, ELForm form);

struct ELEvaluation {
    double lambda = 0.0;
    double log_ratio = 0.0;
    bool feasible = true;
};

ELEvaluation el_log_ratio(const PairedPlacements& placements, double delta0, ELForm form);
ELEvaluation el_log_ratio_dual(const PairedPlacements& placements, double delta0, ELForm form);
ELEvaluation el_log_ratio(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                          double delta0, ELForm form, Kernel kernel = Kernel::Strict);

// Scale multiplier making r * l(delta0) asymptotically chi-square(1).
struct ScaleFactor {
    double r = 0.0;
    double s2 = 0.0;      // pooled variance
    double s10_sq = 0.0;  // X projection component
    double s01_sq = 0.0;  // Y projection component
    double numerator = 0.0;
};

ScaleFactor scale_factor(const PairedPlacements& placements, double delta0);
ScaleFactor scale_factor_dual(const PairedPlacements& placements, double delta0);
ScaleFactor scale_factor(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                         double delta0, Kernel kernel = Kernel::Strict);

struct CIOptions {
    double level = 0.95;
    Kernel kernel = Kernel::Strict;
    ELForm form = ELForm::Brss;
    // Re-evaluate the scale at each candidate delta instead of fixing it at
    // the point estimate (sensitivity studies only).
    bool recompute_scale = false;
    double delta_tol = 1e-8;
};

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double point = 0.0;
    double level = 0.0;
    double scale_at_point = std::numeric_limits<double>::quiet_NaN();
    double lambda_at_lower = 0.0;
    double lambda_at_upper = 0.0;
    int iterations = 0;
    bool clipped_lower = false;  // stopped at the 1e-8 clip margin
    bool clipped_upper = false;
    // Degenerate placement hull (e.g. complete separation, point estimate at
    // 0 or 1): the interval collapses to the point and is flagged rather
    // than erroring the replicate.
    bool boundary = false;

    double length() const { return upper - lower; }
    bool contains(double delta) const { return lower <= delta && delta <= upper; }
};

ConfidenceInterval confidence_interval(const RankedSetSample& x_sample,
                                       const RankedSetSample& y_sample,
                                       const CIOptions& options);

ConfidenceInterval confidence_interval_dual(const RankedSetSample& x_sample,
                                            const RankedSetSample& y_sample,
                                            const CIOptions& options);

ConfidenceInterval confidence_interval(const PairedPlacements& placements,
                                       const CIOptions& options);

ConfidenceInterval confidence_interval_dual(const PairedPlacements& placements,
                                            const CIOptions& options);

}  // namespace rssauc
