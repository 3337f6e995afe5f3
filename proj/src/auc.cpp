#include "rssauc/auc.hpp"

#include <algorithm>

namespace rssauc {

SortedStrata::SortedStrata(const RankedSetSample& sample) {
    sample.validate();
    strata_ = sample.strata;
    const double m = static_cast<double>(strata_.size());
    weight_.reserve(strata_.size());
    for (auto& s : strata_) {
        std::sort(s.begin(), s.end());
        weight_.push_back(1.0 / (m * static_cast<double>(s.size())));
    }
}

double SortedStrata::cdf(double t, Kernel kernel) const {
    double total = 0.0;
    for (std::size_t i = 0; i < strata_.size(); ++i) {
        const auto& s = strata_[i];
        auto lo = std::lower_bound(s.begin(), s.end(), t);
        double count = static_cast<double>(lo - s.begin());
        if (kernel == Kernel::TieHalf) {
            auto hi = std::upper_bound(lo, s.end(), t);
            count += 0.5 * static_cast<double>(hi - lo);
        }
        total += weight_[i] * count;
    }
    return total;
}

double SortedStrata::survival(double t, Kernel kernel) const {
    double total = 0.0;
    for (std::size_t i = 0; i < strata_.size(); ++i) {
        const auto& s = strata_[i];
        auto hi = std::upper_bound(s.begin(), s.end(), t);
        double count = static_cast<double>(s.end() - hi);
        if (kernel == Kernel::TieHalf) {
            auto lo = std::lower_bound(s.begin(), hi, t);
            count += 0.5 * static_cast<double>(hi - lo);
        }
        total += weight_[i] * count;
    }
    return total;
}

double ecdf_rss(const RankedSetSample& x_sample, double t, Kernel kernel) {
    return SortedStrata(x_sample).cdf(t, kernel);
}

double mw_auc(const RankedSetSample& x_sample, const RankedSetSample& y_sample, Kernel kernel) {
    y_sample.validate();
    SortedStrata fx(x_sample);
    const double n = static_cast<double>(y_sample.strata.size());
    double total = 0.0;
    for (const auto& stratum : y_sample.strata) {
        const double w = 1.0 / (n * static_cast<double>(stratum.size()));
        for (double y : stratum) total += w * fx.cdf(y, kernel);
    }
    return total;
}

double mw_auc_dual(const RankedSetSample& x_sample, const RankedSetSample& y_sample,
                   Kernel kernel) {
    x_sample.validate();
    SortedStrata gy(y_sample);
    const double m = static_cast<double>(x_sample.strata.size());
    double total = 0.0;
    for (const auto& stratum : x_sample.strata) {
        const double w = 1.0 / (m * static_cast<double>(stratum.size()));
        for (double x : stratum) total += w * (1.0 - gy.cdf(x, kernel));
    }
    return total;
}

PlacementResiduals placement_residuals(const RankedSetSample& x_sample,
                                       const RankedSetSample& y_sample, double delta0,
                                       Kernel kernel) {
    y_sample.validate();
    SortedStrata fx(x_sample);
    PlacementResiduals out;
    out.delta0 = delta0;
    out.counts = y_sample.counts();
    const double n = static_cast<double>(y_sample.strata.size());
    for (std::size_t r = 0; r < y_sample.strata.size(); ++r) {
        const auto& stratum = y_sample.strata[r];
        const double w = 1.0 / (n * static_cast<double>(stratum.size()));
        for (double y : stratum) {
            // z_rs = 1 - Uhat_rs - delta0 = Fhat(Y_rs) - delta0
            out.residuals.push_back(fx.cdf(y, kernel) - delta0);
            out.weights.push_back(w);
            out.stratum.push_back(static_cast<int>(r));
        }
    }
    return out;
}

PairedPlacements compute_placements(const RankedSetSample& x_sample,
                                    const RankedSetSample& y_sample, Kernel kernel) {
    x_sample.validate();
    y_sample.validate();
    SortedStrata fx(x_sample);
    SortedStrata gy(y_sample);

    PairedPlacements out;
    out.l_counts = y_sample.counts();
    out.k_counts = x_sample.counts();
    out.n_x = x_sample.total_size();
    out.n_y = y_sample.total_size();

    const double n = static_cast<double>(y_sample.strata.size());
    const double m = static_cast<double>(x_sample.strata.size());

    out.fhat_y.resize(y_sample.strata.size());
    for (std::size_t r = 0; r < y_sample.strata.size(); ++r) {
        const auto& stratum = y_sample.strata[r];
        const double w = 1.0 / (n * static_cast<double>(stratum.size()));
        auto& row = out.fhat_y[r];
        row.reserve(stratum.size());
        for (double y : stratum) {
            double f = fx.cdf(y, kernel);
            row.push_back(f);
            out.delta_hat += w * f;
        }
    }

    out.v10_x.resize(x_sample.strata.size());
    out.dual_x.resize(x_sample.strata.size());
    for (std::size_t i = 0; i < x_sample.strata.size(); ++i) {
        const auto& stratum = x_sample.strata[i];
        const double w = 1.0 / (m * static_cast<double>(stratum.size()));
        auto& v10 = out.v10_x[i];
        auto& dual = out.dual_x[i];
        v10.reserve(stratum.size());
        dual.reserve(stratum.size());
        for (double x : stratum) {
            v10.push_back(gy.survival(x, kernel));
            double one_minus_w = 1.0 - gy.cdf(x, kernel);
            dual.push_back(one_minus_w);
            out.delta_hat_dual += w * one_minus_w;
        }
    }
    return out;
}

}  // namespace rssauc
