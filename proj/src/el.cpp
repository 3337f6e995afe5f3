#include "rssauc/el.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rssauc/errors.hpp"
#include "rssauc/special.hpp"

namespace rssauc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_equal(const std::vector<int>& counts) {
    for (int c : counts)
        if (c != counts.front()) return false;
    return true;
}

// Flatten primal residuals z_rs = Fhat(Y_rs) - delta0, applying the form's
// per-stratum scaling.
std::vector<double> primal_effective(const PairedPlacements& pp, double delta0, ELForm form) {
    std::vector<double> eff;
    eff.reserve(pp.n_y);
    const double n = static_cast<double>(pp.fhat_y.size());
    for (std::size_t r = 0; r < pp.fhat_y.size(); ++r) {
        const double scale =
            (form == ELForm::Urss) ? 1.0 / (n * static_cast<double>(pp.l_counts[r])) : 1.0;
        for (double f : pp.fhat_y[r]) eff.push_back((f - delta0) * scale);
    }
    return eff;
}

std::vector<double> dual_effective(const PairedPlacements& pp, double delta0, ELForm form) {
    std::vector<double> eff;
    eff.reserve(pp.n_x);
    const double m = static_cast<double>(pp.dual_x.size());
    for (std::size_t i = 0; i < pp.dual_x.size(); ++i) {
        const double scale =
            (form == ELForm::Urss) ? 1.0 / (m * static_cast<double>(pp.k_counts[i])) : 1.0;
        for (double v : pp.dual_x[i]) eff.push_back((v - delta0) * scale);
    }
    return eff;
}

ELEvaluation evaluate_from_effective(std::span<const double> eff) {
    ELEvaluation ev;
    LambdaResult lr = solve_lambda_effective(eff);
    if (lr.all_zero) return ev;  // lambda = 0, log_ratio = 0
    if (!lr.feasible) {
        ev.feasible = false;
        ev.log_ratio = kInf;
        ev.lambda = std::numeric_limits<double>::quiet_NaN();
        return ev;
    }
    ev.lambda = lr.lambda;
    double sum = 0.0;
    for (double e : eff) sum += std::log1p(lr.lambda * e);
    ev.log_ratio = std::max(0.0, 2.0 * sum);
    return ev;
}

// Pooled variance S^2 shared by the primal and dual scale factors.
struct PooledVariance {
    double s2, s10_sq, s01_sq;
};

PooledVariance pooled_variance(const PairedPlacements& pp) {
    for (int k : pp.k_counts)
        if (k < 2) throw DegenerateError("scale factor requires every X stratum count > 1");
    for (int l : pp.l_counts)
        if (l < 2) throw DegenerateError("scale factor requires every Y stratum count > 1");

    const double m = static_cast<double>(pp.v10_x.size());
    const double n = static_cast<double>(pp.fhat_y.size());
    const double nx = static_cast<double>(pp.n_x);
    const double ny = static_cast<double>(pp.n_y);

    // Each stratum contributes its projection variance with the weight its
    // observations carry in the point estimate, sigma_i^2 / (m^2 k_i); the
    // leading total-count factor keeps the balanced case equal to the plain
    // per-stratum average sum_i sigma_i^2 / m.
    double s10 = 0.0;
    for (const auto& row : pp.v10_x) {
        const double k = static_cast<double>(row.size());
        double mean = 0.0;
        for (double v : row) mean += v;
        mean /= k;
        double ss = 0.0;
        for (double v : row) ss += (v - mean) * (v - mean);
        s10 += nx * ss / (m * m * k * (k - 1.0));
    }

    double s01 = 0.0;
    for (const auto& row : pp.fhat_y) {
        const double l = static_cast<double>(row.size());
        double mean = 0.0;
        for (double v : row) mean += v;
        mean /= l;
        double ss = 0.0;
        for (double v : row) ss += (v - mean) * (v - mean);
        s01 += ny * ss / (n * n * l * (l - 1.0));
    }
    double s2 = (ny * s10 + nx * s01) / (nx + ny);
    if (!(s2 > 0.0))
        throw DegenerateError("degenerate sample: zero pooled variance (all comparisons identical)");
    return {s2, s10, s01};
}

}  // namespace

LambdaResult solve_lambda_effective(std::span<const double> eff) {
    LambdaResult result;
    double max_pos = 0.0, min_neg = 0.0;
    bool any_nonzero = false;
    for (double e : eff) {
        if (e != 0.0) any_nonzero = true;
        max_pos = std::max(max_pos, e);
        min_neg = std::min(min_neg, e);
    }
    if (!any_nonzero) {
        result.all_zero = true;
        return result;
    }
    if (!(max_pos > 0.0) || !(min_neg < 0.0)) {
        result.feasible = false;
        return result;
    }

    // All denominators 1 + lambda*e stay positive on (lo, hi).
    const double lo_limit = -1.0 / max_pos;
    const double hi_limit = -1.0 / min_neg;

    const auto eval = [&](double lambda, double& g, double& dg) {
        g = 0.0;
        dg = 0.0;
        for (double e : eff) {
            double denom = 1.0 + lambda * e;
            double t = e / denom;
            g += t;
            dg -= t * t;
        }
    };

    double lo = lo_limit, hi = hi_limit;
    double lambda = 0.0;
    double sum_abs = 0.0;
    for (double e : eff) sum_abs += std::fabs(e);
    const double tol = 1e-14 * std::max(1.0, sum_abs);
    for (int iter = 0; iter < 200; ++iter) {
        double g, dg;
        eval(lambda, g, dg);
        if (std::fabs(g) <= tol) break;
        if (g > 0.0)
            lo = lambda;  // g is decreasing in lambda
        else
            hi = lambda;
        double next = lambda - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - lambda) <= 1e-15 * (1.0 + std::fabs(lambda))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    result.lambda = lambda;
    return result;
}

LambdaResult solve_lambda(const PlacementResiduals& residuals, ELForm form) {
    std::vector<double> eff(residuals.residuals);
    if (form == ELForm::Urss) {
        const double n = static_cast<double>(residuals.counts.size());
        for (std::size_t i = 0; i < eff.size(); ++i)
            eff[i] /= n * static_cast<double>(
                              residuals.counts[static_cast<std::size_t>(residuals.stratum[i])]);
    }
    return solve_lambda_effective(eff);
}

ELEvaluation el_log_ratio(const PairedPlacements& pp, double delta0, ELForm form) {
    // A balanced sample collapses the Urss weights to a common constant, so
    // route it through the Brss path; the log ratio is then bit-identical
    // and only the multiplier is rescaled.
    if (form == ELForm::Urss && all_equal(pp.l_counts)) {
        ELEvaluation ev = el_log_ratio(pp, delta0, ELForm::Brss);
        ev.lambda *= static_cast<double>(pp.n_y);
        return ev;
    }
    return evaluate_from_effective(primal_effective(pp, delta0, form));
}

ELEvaluation el_log_ratio_dual(const PairedPlacements& pp, double delta0, ELForm form) {
    if (form == ELForm::Urss && all_equal(pp.k_counts)) {
        ELEvaluation ev = el_log_ratio_dual(pp, delta0, ELForm::Brss);
        ev.lambda *= static_cast<double>(pp.n_x);
        return ev;
    }
    return evaluate_from_effective(dual_effective(pp, delta0, form));
}

ELEvaluation el_log_ratio(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                          double delta0, ELForm form, Kernel kernel) {
    return el_log_ratio(compute_placements(x_sample, y_sample, kernel), delta0, form);
}

ScaleFactor scale_factor(const PairedPlacements& pp, double delta0) {
    PooledVariance pv = pooled_variance(pp);
    const double n = static_cast<double>(pp.fhat_y.size());
    const double nx = static_cast<double>(pp.n_x);
    const double ny = static_cast<double>(pp.n_y);
    // Squared stratum weights, scaled back up by the total count: this is the
    // second moment the log ratio's quadratic expansion actually carries, and
    // it reduces to the plain weighted mean of squares when counts are equal.
    double num = 0.0;
    for (const auto& row : pp.fhat_y) {
        const double w = 1.0 / (n * static_cast<double>(row.size()));
        for (double f : row) num += ny * w * w * (f - delta0) * (f - delta0);
    }
    return {nx / (nx + ny) * num / pv.s2, pv.s2, pv.s10_sq, pv.s01_sq, num};
}

ScaleFactor scale_factor_dual(const PairedPlacements& pp, double delta0) {
    PooledVariance pv = pooled_variance(pp);
    const double m = static_cast<double>(pp.dual_x.size());
    const double nx = static_cast<double>(pp.n_x);
    const double ny = static_cast<double>(pp.n_y);
    double num = 0.0;
    for (const auto& row : pp.dual_x) {
        const double w = 1.0 / (m * static_cast<double>(row.size()));
        for (double v : row) num += nx * w * w * (v - delta0) * (v - delta0);
    }
    return {ny / (nx + ny) * num / pv.s2, pv.s2, pv.s10_sq, pv.s01_sq, num};
}

ScaleFactor scale_factor(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                         double delta0, Kernel kernel) {
    return scale_factor(compute_placements(x_sample, y_sample, kernel), delta0);
}

namespace {

constexpr double kClipMargin = 1e-8;

ConfidenceInterval invert_interval(const PairedPlacements& pp, const CIOptions& opt, bool dual) {
    ConfidenceInterval ci;
    ci.level = opt.level;
    ci.point = dual ? pp.delta_hat_dual : pp.delta_hat;

    const auto& placement_rows = dual ? pp.dual_x : pp.fhat_y;
    double hull_lo = kInf, hull_hi = -kInf;
    for (const auto& row : placement_rows)
        for (double v : row) {
            hull_lo = std::min(hull_lo, v);
            hull_hi = std::max(hull_hi, v);
        }

    if (hull_hi - hull_lo <= 1e-12) {
        // Complete separation or otherwise degenerate placements: the EL has
        // no curvature; return the point interval, flagged.
        ci.boundary = true;
        ci.lower = ci.upper = std::clamp(ci.point, 0.0, 1.0);
        return ci;
    }

    const double chi2 = chi_square_quantile(opt.level, 1.0);
    ScaleFactor sf = dual ? scale_factor_dual(pp, ci.point) : scale_factor(pp, ci.point);
    ci.scale_at_point = sf.r;

    // Scaled log ratio minus the threshold; +inf outside the feasible hull.
    ELEvaluation last_eval;
    const auto excess = [&](double delta) {
        if (delta <= hull_lo || delta >= hull_hi) {
            last_eval = ELEvaluation{std::numeric_limits<double>::quiet_NaN(), kInf, false};
            return kInf;
        }
        last_eval = dual ? el_log_ratio_dual(pp, delta, opt.form)
                         : el_log_ratio(pp, delta, opt.form);
        if (!last_eval.feasible) return kInf;
        double r = opt.recompute_scale
                       ? (dual ? scale_factor_dual(pp, delta) : scale_factor(pp, delta)).r
                       : sf.r;
        return r * last_eval.log_ratio - chi2;
    };

    int iterations = 0;
    // One-sided bisection outward from the point estimate; l is
    // nondecreasing away from it within the hull.
    const auto solve_side = [&](double limit, bool lower_side, bool& clipped, double& lambda_out) {
        double outer = limit;
        if (excess(outer) <= 0.0) {
            // The whole side up to the hull/clip limit is inside the region.
            clipped = lower_side ? (limit <= kClipMargin) : (limit >= 1.0 - kClipMargin);
            lambda_out = last_eval.lambda;
            return outer;
        }
        double inner = ci.point;
        while (std::fabs(outer - inner) > opt.delta_tol) {
            double mid = 0.5 * (outer + inner);
            ++iterations;
            if (excess(mid) > 0.0)
                outer = mid;
            else
                inner = mid;
        }
        excess(inner);
        lambda_out = last_eval.lambda;
        return inner;
    };

    const double lo_limit = std::max(hull_lo, kClipMargin);
    const double hi_limit = std::min(hull_hi, 1.0 - kClipMargin);
    ci.lower = solve_side(lo_limit, true, ci.clipped_lower, ci.lambda_at_lower);
    ci.upper = solve_side(hi_limit, false, ci.clipped_upper, ci.lambda_at_upper);
    ci.lower = std::min(ci.lower, ci.point);
    ci.upper = std::max(ci.upper, ci.point);
    ci.iterations = iterations;
    return ci;
}

}  // namespace

ConfidenceInterval confidence_interval(const PairedPlacements& pp, const CIOptions& opt) {
    if (!(opt.level > 0.0 && opt.level < 1.0)) throw ConfigError("level must lie in (0,1)");
    return invert_interval(pp, opt, /*dual=*/false);
}

ConfidenceInterval confidence_interval_dual(const PairedPlacements& pp, const CIOptions& opt) {
    if (!(opt.level > 0.0 && opt.level < 1.0)) throw ConfigError("level must lie in (0,1)");
    return invert_interval(pp, opt, /*dual=*/true);
}

ConfidenceInterval confidence_interval(const RankedSetSample& x_sample,
                                       const RankedSetSample& y_sample, const CIOptions& opt) {
    return confidence_interval(compute_placements(x_sample, y_sample, opt.kernel), opt);
}

ConfidenceInterval confidence_interval_dual(const RankedSetSample& x_sample,
                                            const RankedSetSample& y_sample,
                                            const CIOptions& opt) {
    return confidence_interval_dual(compute_placements(x_sample, y_sample, opt.kernel), opt);
}

}  // namespace rssauc
