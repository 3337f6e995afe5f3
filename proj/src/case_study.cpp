#include "rssauc/case_study.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "rssauc/errors.hpp"
#include "rssauc/rss.hpp"

namespace rssauc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

bool is_missing(const std::string& s) {
    return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan";
}

double parse_numeric(const std::string& s, const char* what, std::size_t line_no) {
    double value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw DataError("line " + std::to_string(line_no) + ": unparseable " + what + " '" + s +
                        "'");
    return value;
}

}  // namespace

Orientation orientation_from_string(const std::string& name) {
    if (name == "higher") return Orientation::HigherIsDiseased;
    if (name == "lower") return Orientation::LowerIsDiseased;
    throw ConfigError("unknown orientation '" + name + "' (expected higher|lower)");
}

double PopulationDataset::population_auc() const {
    if (x_values.empty() || y_values.empty())
        throw DataError("population AUC needs both groups non-empty");
    std::vector<double> xs = x_values;
    std::sort(xs.begin(), xs.end());
    const double nx = static_cast<double>(xs.size());
    double total = 0.0;
    for (double y : y_values) {
        auto lo = std::lower_bound(xs.begin(), xs.end(), y);
        auto hi = std::upper_bound(xs.begin(), xs.end(), y);
        double below = static_cast<double>(lo - xs.begin());
        double ties = static_cast<double>(hi - lo);
        total += (below + 0.5 * ties) / nx;
    }
    return total / static_cast<double>(y_values.size());
}

PopulationDataset load_dataset(const std::string& path, const ColumnMap& columns,
                               Orientation orientation) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty dataset file: " + path);
    auto header = split_csv_line(line);
    for (auto& h : header) h = trimmed(h);

    auto find_column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw DataError("dataset is missing required column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t marker_col = find_column(columns.marker);
    const std::size_t disease_col = find_column(columns.disease);
    const std::size_t concom_col = find_column(columns.concomitant);

    PopulationDataset dataset;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        auto fields = split_csv_line(line);
        std::size_t needed = std::max({marker_col, disease_col, concom_col}) + 1;
        if (fields.size() < needed) {
            ++dataset.dropped_rows;
            continue;
        }
        std::string marker_s = trimmed(fields[marker_col]);
        std::string disease_s = trimmed(fields[disease_col]);
        std::string concom_s = trimmed(fields[concom_col]);
        if (is_missing(marker_s) || is_missing(disease_s) || is_missing(concom_s)) {
            ++dataset.dropped_rows;
            continue;
        }
        double marker = parse_numeric(marker_s, "marker", line_no);
        double concom = parse_numeric(concom_s, "concomitant", line_no);
        double disease = parse_numeric(disease_s, "disease status", line_no);
        if (disease != 0.0 && disease != 1.0)
            throw DataError("line " + std::to_string(line_no) +
                            ": disease status must be 0 or 1, got '" + disease_s + "'");
        if (orientation == Orientation::LowerIsDiseased) marker = -marker;
        if (disease == 1.0) {
            dataset.y_values.push_back(marker);
            dataset.y_concomitants.push_back(
                orientation == Orientation::LowerIsDiseased ? -concom : concom);
        } else {
            dataset.x_values.push_back(marker);
            dataset.x_concomitants.push_back(
                orientation == Orientation::LowerIsDiseased ? -concom : concom);
        }
    }

    if (dataset.x_values.empty()) throw DataError("dataset has no non-diseased (status 0) rows");
    if (dataset.y_values.empty()) throw DataError("dataset has no diseased (status 1) rows");
    return dataset;
}

std::vector<CellSummary> run_case_sweep(const PopulationDataset& dataset,
                                        const CaseStudyConfig& config) {
    std::vector<std::string> problems;
    if (config.methods.empty()) problems.push_back("methods must be non-empty");
    if (config.sizes.empty()) problems.push_back("sizes must be non-empty");
    if (config.replicates < 1) problems.push_back("replicates must be >= 1");
    if (!(config.level > 0.0 && config.level < 1.0))
        problems.push_back("level must lie in (0, 1)");

    const double true_delta = dataset.population_auc();

    // Expand the grid, canonicalizing coordinates irrelevant to a method so
    // duplicates collapse, mirroring the synthetic sweep.
    std::vector<Cell> cells;
    std::set<std::tuple<int, int, int, int, long long>> seen;
    for (Method method : config.methods)
        for (const SizePair& size : config.sizes)
            for (int set_size : config.set_sizes)
                for (double p_y : config.p_ys) {
                    Cell cell;
                    cell.method = method;
                    cell.delta = true_delta;  // the population AUC, echoed in output
                    cell.nx = size.nx;
                    cell.ny = size.ny;
                    cell.set_size = method == Method::SrsEl ? 1 : set_size;
                    cell.rho = 1.0;
                    cell.p_y = method == Method::UrssEl ? p_y : 0.5;
                    cell.label = "case";
                    auto key = std::make_tuple(static_cast<int>(method), cell.nx, cell.ny,
                                               cell.set_size,
                                               static_cast<long long>(cell.p_y * 1e9));
                    if (!seen.insert(key).second) continue;
                    cells.push_back(cell);
                }

    for (const Cell& cell : cells) {
        std::string tag = method_to_string(cell.method) + " n_x=" + std::to_string(cell.nx) +
                          " n_y=" + std::to_string(cell.ny) +
                          " set_size=" + std::to_string(cell.set_size);
        if (cell.nx < 2 || cell.ny < 2) {
            problems.push_back(tag + ": both sample sizes must be >= 2");
            continue;
        }
        if (cell.method != Method::SrsEl) {
            if (cell.nx % cell.set_size != 0 || (cell.method != Method::UrssEl &&
                                                 cell.ny % cell.set_size != 0)) {
                problems.push_back(tag + ": sample sizes must be divisible by the set size");
                continue;
            }
            if (cell.nx / cell.set_size < 2)
                problems.push_back(tag + ": fewer than 2 cycles in the x group");
            if (cell.method != Method::UrssEl && cell.ny / cell.set_size < 2)
                problems.push_back(tag + ": fewer than 2 cycles in the y group");
            if (static_cast<int>(dataset.x_concomitants.size()) < cell.set_size ||
                static_cast<int>(dataset.y_concomitants.size()) < cell.set_size)
                problems.push_back(tag + ": a population group is smaller than the set size");
        }
        if (cell.method == Method::UrssEl) {
            if (cell.set_size != 2) {
                problems.push_back(tag + ": unbalanced designs here use set size 2");
                continue;
            }
            AllocationPlan plan = AllocationPlan::two_stratum(cell.ny, cell.p_y);
            for (int count : plan.counts)
                if (count < 2) {
                    problems.push_back(tag + ": p_y=" + format_double(cell.p_y) +
                                       " allocates fewer than 2 units to a stratum");
                    break;
                }
        }
    }
    if (!problems.empty()) {
        std::string message = "invalid case-study configuration:";
        for (const auto& p : problems) message += "\n  - " + p;
        throw ConfigError(message);
    }

    DrawFn draw = [&dataset](const Cell& cell, Rng& rng) {
        FiniteSource source_x(dataset.x_values, dataset.x_concomitants);
        FiniteSource source_y(dataset.y_values, dataset.y_concomitants);
        SamplePair pair;
        switch (cell.method) {
            case Method::SrsEl:
                pair.x = draw_srs(source_x, cell.nx, rng);
                pair.y = draw_srs(source_y, cell.ny, rng);
                break;
            case Method::UrssEl:
                pair.x = draw_brss(source_x, cell.set_size, cell.nx / cell.set_size, rng);
                pair.y = draw_urss(source_y, AllocationPlan::two_stratum(cell.ny, cell.p_y), rng);
                break;
            default:
                pair.x = draw_brss(source_x, cell.set_size, cell.nx / cell.set_size, rng);
                pair.y = draw_brss(source_y, cell.set_size, cell.ny / cell.set_size, rng);
                break;
        }
        return pair;
    };

    std::vector<CellSummary> summaries;
    summaries.reserve(cells.size());
    for (const Cell& cell : cells)
        summaries.push_back(run_cell(cell, config.replicates, config.level, true_delta,
                                     config.seed, config.workers, draw, config.kernel));
    return summaries;
}

}  // namespace rssauc
