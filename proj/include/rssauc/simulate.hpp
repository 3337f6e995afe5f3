#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rssauc/auc.hpp"
#include "rssauc/el.hpp"
#include "rssauc/populations.hpp"
#include "rssauc/sample_io.hpp"

namespace rssauc {

enum class Method { SrsEl, BrssEl, UrssEl, BrssKer, DualEl };

Method method_from_string(const std::string& name);
std::string method_to_string(Method method);

struct SizePair {
    int nx = 0;
    int ny = 0;
};

// One point of the sweep grid. Coordinates irrelevant to a method are
// canonicalized (SRS: set_size 1, rho 1; non-URSS: p_y 0.5) so duplicate
// cells collapse and derived seeds stay stable.
struct Cell {
    Method method = Method::BrssEl;
    Family family = Family::Normal;
    double delta = 0.5;
    int nx = 0, ny = 0;
    int set_size = 2;
    double rho = 1.0;
    double p_y = 0.5;
    // Replaces the family name in output rows (finite-population studies).
    std::string label;
};

struct SimulationConfig {
    std::vector<Method> methods;
    std::vector<Family> families;
    std::vector<double> deltas;
    std::vector<SizePair> sizes;
    std::vector<int> set_sizes{2};
    std::vector<double> rhos{1.0};
    std::vector<double> p_ys{0.5};
    int replicates = 5000;
    double level = 0.95;
    std::uint64_t seed = 0;
    bool has_seed = false;
    int workers = 0;  // 0 = hardware concurrency

    static SimulationConfig from_json_file(const std::string& path);
    static SimulationConfig from_json_text(const std::string& text);
    std::string to_json_text() const;

    // Validates everything and reports all problems at once.
    std::vector<Cell> expand_cells() const;
};

struct ReplicateRecord {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double length = 0.0;
    bool covered = false;
    bool degenerate = false;
};

struct CellSummary {
    Cell cell;
    int replicates = 0;
    double coverage = 0.0;
    double avg_length = 0.0;
    double sd_length = 0.0;
    double mean_point = 0.0;
    int degenerate_count = 0;
};

// Compute the cell's method interval from already-drawn samples.
ConfidenceInterval compute_method_ci(Method method, const SamplePair& pair, double level,
                                     Kernel kernel);

// Replicate-level sample drawing, injected so the same cell runner serves
// both synthetic sweeps and finite-population case studies.
using DrawFn = std::function<SamplePair(const Cell&, Rng&)>;

SamplePair draw_synthetic_pair(const Cell& cell, Rng& rng);

// Run one cell: per-replicate generator streams are derived from
// (master seed, cell coordinates, replicate), so results are byte-identical
// regardless of the worker count.
CellSummary run_cell(const Cell& cell, int replicates, double level, double true_delta,
                     std::uint64_t master_seed, int workers, const DrawFn& draw,
                     Kernel kernel = Kernel::Strict,
                     std::vector<ReplicateRecord>* records = nullptr);

// Synthetic convenience: true delta is the cell's delta.
CellSummary run_cell(const Cell& cell, int replicates, double level, std::uint64_t master_seed,
                     int workers = 0, std::vector<ReplicateRecord>* records = nullptr);

std::vector<CellSummary> run_sweep(const SimulationConfig& config,
                                   std::ostream* per_replicate_csv = nullptr);

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& summaries);
void write_per_replicate_header(std::ostream& out);
void write_per_replicate_rows(std::ostream& out, const Cell& cell,
                              const std::vector<ReplicateRecord>& records);

// Shortest round-trip formatting for CSV output (locale independent).
std::string format_double(double value);

std::vector<std::string> preset_names();
SimulationConfig preset_config(const std::string& name);

}  // namespace rssauc
