#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rssauc/random.hpp"

namespace rssauc {

enum class Family { Normal, LogNormal, Uniform };

Family family_from_string(const std::string& name);
std::string family_to_string(Family family);

// A pair of marginal distributions (non-diseased X, diseased Y) with known
// true AUC P(Y > X) = delta:
//   Normal:    X ~ N(0,1),  Y ~ N(sqrt(5) * Phi^{-1}(delta), 4)
//   LogNormal: X ~ LN(0,1), Y ~ LN(sqrt(5) * Phi^{-1}(delta), 4)
//   Uniform:   X ~ U(0,1),  Y ~ U(0, 1 / (2(1 - delta))), delta >= 0.5
struct PopulationPair {
    Family family = Family::Normal;
    double delta = 0.5;

    // Distribution parameters. Normal/LogNormal: (mu, sigma) of the normal
    // on the natural / log scale. Uniform: support [lo, hi].
    double param_x1 = 0.0, param_x2 = 1.0;
    double param_y1 = 0.0, param_y2 = 1.0;

    // Marginal moments, used to standardize values for the concomitant model.
    double mean_x = 0.0, sd_x = 1.0;
    double mean_y = 0.0, sd_y = 1.0;

    static PopulationPair make(Family family, double delta);

    double draw_x(Rng& rng) const;
    double draw_y(Rng& rng) const;
};

// Judgment-ranking quality model. The concomitant of a value v with
// population moments (mean, sd) is
//   C = rho * (v - mean) / sd + (1 - rho^2) * Z,   Z ~ N(0,1).
// rho = 1 gives perfect ranking; rho = 0 gives pure noise.
struct ConcomitantModel {
    double rho_x = 1.0;
    double rho_y = 1.0;
};

double concomitant_value(double value, double mean, double sd, double rho, Rng& rng);

struct RankedUnitRecord {
    double value;
    double concomitant;
};

// Attach a concomitant to each value; throws DegenerateError when sd == 0.
std::vector<RankedUnitRecord> attach_concomitant(const std::vector<double>& values,
                                                 double mean, double sd, double rho,
                                                 Rng& rng);

// i.i.d. draws from the two marginals.
std::pair<std::vector<double>, std::vector<double>> sample_pair(const PopulationPair& pop,
                                                                int count_x, int count_y,
                                                                Rng& rng);

}  // namespace rssauc
