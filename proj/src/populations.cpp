#include "rssauc/populations.hpp"

#include <cmath>

#include "rssauc/errors.hpp"
#include "rssauc/special.hpp"

namespace rssauc {

Family family_from_string(const std::string& name) {
    if (name == "normal") return Family::Normal;
    if (name == "lognormal") return Family::LogNormal;
    if (name == "uniform") return Family::Uniform;
    throw ConfigError("unknown family '" + name + "' (expected normal, lognormal, or uniform)");
}

std::string family_to_string(Family family) {
    switch (family) {
        case Family::Normal: return "normal";
        case Family::LogNormal: return "lognormal";
        case Family::Uniform: return "uniform";
    }
    return "?";
}

PopulationPair PopulationPair::make(Family family, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
    PopulationPair pop;
    pop.family = family;
    pop.delta = delta;
    switch (family) {
        case Family::Normal: {
            double mu_y = std::sqrt(5.0) * normal_quantile(delta);
            pop.param_x1 = 0.0;
            pop.param_x2 = 1.0;
            pop.param_y1 = mu_y;
            pop.param_y2 = 2.0;
            pop.mean_x = 0.0;
            pop.sd_x = 1.0;
            pop.mean_y = mu_y;
            pop.sd_y = 2.0;
            break;
        }
        case Family::LogNormal: {
            // (mu, sigma^2) parameters of the underlying normal.
            double mu_y = std::sqrt(5.0) * normal_quantile(delta);
            pop.param_x1 = 0.0;
            pop.param_x2 = 1.0;
            pop.param_y1 = mu_y;
            pop.param_y2 = 2.0;
            auto moments = [](double mu, double sigma) {
                double mean = std::exp(mu + 0.5 * sigma * sigma);
                double sd = mean * std::sqrt(std::exp(sigma * sigma) - 1.0);
                return std::pair{mean, sd};
            };
            auto [mx, sx] = moments(0.0, 1.0);
            auto [my, sy] = moments(mu_y, 2.0);
            pop.mean_x = mx;
            pop.sd_x = sx;
            pop.mean_y = my;
            pop.sd_y = sy;
            break;
        }
        case Family::Uniform: {
            if (delta < 0.5)
                throw ConfigError("uniform family requires delta >= 0.5");
            double hi = 1.0 / (2.0 * (1.0 - delta));
            pop.param_x1 = 0.0;
            pop.param_x2 = 1.0;
            pop.param_y1 = 0.0;
            pop.param_y2 = hi;
            pop.mean_x = 0.5;
            pop.sd_x = 1.0 / std::sqrt(12.0);
            pop.mean_y = 0.5 * hi;
            pop.sd_y = hi / std::sqrt(12.0);
            break;
        }
    }
    return pop;
}

double PopulationPair::draw_x(Rng& rng) const {
    switch (family) {
        case Family::Normal: return param_x1 + param_x2 * rng.normal();
        case Family::LogNormal: return std::exp(param_x1 + param_x2 * rng.normal());
        case Family::Uniform: return rng.uniform(param_x1, param_x2);
    }
    return 0.0;
}

double PopulationPair::draw_y(Rng& rng) const {
    switch (family) {
        case Family::Normal: return param_y1 + param_y2 * rng.normal();
        case Family::LogNormal: return std::exp(param_y1 + param_y2 * rng.normal());
        case Family::Uniform: return rng.uniform(param_y1, param_y2);
    }
    return 0.0;
}

double concomitant_value(double value, double mean, double sd, double rho, Rng& rng) {
    if (sd <= 0.0) throw DegenerateError("degenerate population: zero standard deviation");
    return rho * (value - mean) / sd + (1.0 - rho * rho) * rng.normal();
}

std::vector<RankedUnitRecord> attach_concomitant(const std::vector<double>& values,
                                                 double mean, double sd, double rho,
                                                 Rng& rng) {
    std::vector<RankedUnitRecord> records;
    records.reserve(values.size());
    for (double v : values)
        records.push_back({v, concomitant_value(v, mean, sd, rho, rng)});
    return records;
}

std::pair<std::vector<double>, std::vector<double>> sample_pair(const PopulationPair& pop,
                                                                int count_x, int count_y,
                                                                Rng& rng) {
    if (count_x < 1 || count_y < 1) throw ConfigError("sample counts must be >= 1");
    std::vector<double> xs(count_x), ys(count_y);
    for (auto& v : xs) v = pop.draw_x(rng);
    for (auto& v : ys) v = pop.draw_y(rng);
    return {std::move(xs), std::move(ys)};
}

}  // namespace rssauc
