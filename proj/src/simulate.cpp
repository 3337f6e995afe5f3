#include "rssauc/simulate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "rssauc/errors.hpp"
#include "rssauc/kernel_baseline.hpp"
#include "rssauc/rss.hpp"

namespace rssauc {

Method method_from_string(const std::string& name) {
    if (name == "srs-el") return Method::SrsEl;
    if (name == "brss-el") return Method::BrssEl;
    if (name == "urss-el") return Method::UrssEl;
    if (name == "brss-ker") return Method::BrssKer;
    if (name == "dual-el") return Method::DualEl;
    throw ConfigError("unknown method '" + name +
                      "' (expected srs-el, brss-el, urss-el, brss-ker, or dual-el)");
}

std::string method_to_string(Method method) {
    switch (method) {
        case Method::SrsEl: return "srs-el";
        case Method::BrssEl: return "brss-el";
        case Method::UrssEl: return "urss-el";
        case Method::BrssKer: return "brss-ker";
        case Method::DualEl: return "dual-el";
    }
    return "?";
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

using nlohmann::json;

template <class T, class Parse>
std::vector<T> parse_list(const json& j, const std::string& key, Parse parse) {
    std::vector<T> out;
    for (const auto& item : j.at(key)) out.push_back(parse(item));
    return out;
}

}  // namespace

SimulationConfig SimulationConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    SimulationConfig config;
    try {
        config.methods = parse_list<Method>(
            j, "methods", [](const json& v) { return method_from_string(v.get<std::string>()); });
        config.families = parse_list<Family>(j, "families", [](const json& v) {
            return family_from_string(v.get<std::string>());
        });
        config.deltas = parse_list<double>(j, "deltas", [](const json& v) { return v.get<double>(); });
        config.sizes = parse_list<SizePair>(j, "sizes", [](const json& v) {
            if (v.is_number_integer()) {
                int n = v.get<int>();
                return SizePair{n, n};
            }
            if (v.is_array() && v.size() == 2)
                return SizePair{v[0].get<int>(), v[1].get<int>()};
            throw ConfigError("each size must be an integer or a [n_x, n_y] pair");
        });
        if (j.contains("set_sizes"))
            config.set_sizes =
                parse_list<int>(j, "set_sizes", [](const json& v) { return v.get<int>(); });
        if (j.contains("rhos"))
            config.rhos = parse_list<double>(j, "rhos", [](const json& v) { return v.get<double>(); });
        if (j.contains("p_y"))
            config.p_ys = parse_list<double>(j, "p_y", [](const json& v) { return v.get<double>(); });
        if (j.contains("replicates")) config.replicates = j.at("replicates").get<int>();
        if (j.contains("level")) config.level = j.at("level").get<double>();
        if (j.contains("workers")) config.workers = j.at("workers").get<int>();
        if (j.contains("seed")) {
            config.seed = j.at("seed").get<std::uint64_t>();
            config.has_seed = true;
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return config;
}

SimulationConfig SimulationConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string SimulationConfig::to_json_text() const {
    json j;
    json methods = json::array();
    for (Method m : this->methods) methods.push_back(method_to_string(m));
    j["methods"] = methods;
    json families = json::array();
    for (Family f : this->families) families.push_back(family_to_string(f));
    j["families"] = families;
    j["deltas"] = deltas;
    json sizes = json::array();
    for (const auto& s : this->sizes) {
        if (s.nx == s.ny)
            sizes.push_back(s.nx);
        else
            sizes.push_back(json::array({s.nx, s.ny}));
    }
    j["sizes"] = sizes;
    j["set_sizes"] = set_sizes;
    j["rhos"] = rhos;
    j["p_y"] = p_ys;
    j["replicates"] = replicates;
    j["level"] = level;
    if (has_seed) j["seed"] = seed;
    if (workers > 0) j["workers"] = workers;
    return j.dump(2) + "\n";
}

namespace {

void validate_cell(const Cell& cell, std::vector<std::string>& errors) {
    std::ostringstream where;
    where << method_to_string(cell.method) << '/' << family_to_string(cell.family) << "/delta="
          << cell.delta << "/n_x=" << cell.nx << "/n_y=" << cell.ny << ": ";
    auto report = [&](const std::string& msg) { errors.push_back(where.str() + msg); };

    if (!(cell.delta > 0.0 && cell.delta < 1.0)) report("delta must lie in (0,1)");
    if (cell.family == Family::Uniform && cell.delta < 0.5)
        report("uniform family requires delta >= 0.5");
    if (!(cell.rho >= 0.0 && cell.rho <= 1.0)) report("rho must lie in [0,1]");
    if (cell.nx < 2 || cell.ny < 2) report("sample sizes must be >= 2");

    switch (cell.method) {
        case Method::SrsEl:
            break;
        case Method::BrssEl:
        case Method::BrssKer:
        case Method::DualEl:
            if (cell.set_size < 1) report("set size must be >= 1");
            if (cell.set_size >= 1 && cell.nx % cell.set_size != 0)
                report("n_x is not a multiple of the set size (cycle count must be integral)");
            if (cell.set_size >= 1 && cell.ny % cell.set_size != 0)
                report("n_y is not a multiple of the set size (cycle count must be integral)");
            if (cell.set_size >= 1 && cell.nx % cell.set_size == 0 &&
                cell.nx / cell.set_size < 2)
                report("needs at least 2 cycles for X");
            if (cell.set_size >= 1 && cell.ny % cell.set_size == 0 &&
                cell.ny / cell.set_size < 2)
                report("needs at least 2 cycles for Y");
            break;
        case Method::UrssEl: {
            if (cell.set_size < 1) report("set size must be >= 1");
            if (cell.set_size >= 1 && cell.nx % cell.set_size != 0)
                report("n_x is not a multiple of the set size (cycle count must be integral)");
            if (cell.set_size >= 1 && cell.nx % cell.set_size == 0 &&
                cell.nx / cell.set_size < 2)
                report("needs at least 2 cycles for X");
            if (!(cell.p_y > 0.0 && cell.p_y < 1.0)) {
                report("p_y must lie in (0,1)");
                break;
            }
            try {
                auto plan = AllocationPlan::two_stratum(cell.ny, cell.p_y);
                for (int c : plan.counts)
                    if (c < 2) report("p_y allocation leaves a stratum with fewer than 2 units");
            } catch (const ConfigError& e) {
                report(e.what());
            }
            break;
        }
    }
}

}  // namespace

std::vector<Cell> SimulationConfig::expand_cells() const {
    std::vector<std::string> errors;
    if (methods.empty()) errors.push_back("methods list is empty");
    if (families.empty()) errors.push_back("families list is empty");
    if (deltas.empty()) errors.push_back("deltas list is empty");
    if (sizes.empty()) errors.push_back("sizes list is empty");
    if (set_sizes.empty()) errors.push_back("set_sizes list is empty");
    if (rhos.empty()) errors.push_back("rhos list is empty");
    if (p_ys.empty()) errors.push_back("p_y list is empty");
    if (replicates < 1) errors.push_back("replicates must be >= 1");
    if (!(level > 0.0 && level < 1.0)) errors.push_back("level must lie in (0,1)");
    if (!has_seed) errors.push_back("seed is required for reproducibility");

    std::vector<Cell> cells;
    std::set<std::tuple<int, int, double, int, int, int, double, double>> seen;
    if (errors.empty()) {
        for (Method method : methods)
            for (Family family : families)
                for (double delta : deltas)
                    for (const SizePair& size : sizes)
                        for (int set_size : set_sizes)
                            for (double rho : rhos)
                                for (double p_y : p_ys) {
                                    Cell cell{method, family, delta, size.nx, size.ny,
                                              set_size, rho,    p_y};
                                    if (method == Method::SrsEl) {
                                        cell.set_size = 1;
                                        cell.rho = 1.0;
                                    }
                                    if (method != Method::UrssEl) cell.p_y = 0.5;
                                    auto key = std::tuple(static_cast<int>(cell.method),
                                                          static_cast<int>(cell.family),
                                                          cell.delta, cell.nx, cell.ny,
                                                          cell.set_size, cell.rho, cell.p_y);
                                    if (!seen.insert(key).second) continue;
                                    validate_cell(cell, errors);
                                    cells.push_back(cell);
                                }
    }
    if (!errors.empty()) {
        std::string message = "invalid configuration:";
        for (const auto& e : errors) message += "\n  - " + e;
        throw ConfigError(message);
    }
    return cells;
}

// ---------------------------------------------------------------------------
// Running

ConfidenceInterval compute_method_ci(Method method, const SamplePair& pair, double level,
                                     Kernel kernel) {
    CIOptions options;
    options.level = level;
    options.kernel = kernel;
    switch (method) {
        case Method::SrsEl:
        case Method::BrssEl:
            options.form = ELForm::Brss;
            return confidence_interval(pair.x, pair.y, options);
        case Method::UrssEl:
            options.form = ELForm::Urss;
            return confidence_interval(pair.x, pair.y, options);
        case Method::DualEl:
            options.form = ELForm::Brss;
            return confidence_interval_dual(pair.x, pair.y, options);
        case Method::BrssKer:
            return kernel_ci(pair.x, pair.y, level);
    }
    throw ConfigError("unhandled method");
}

SamplePair draw_synthetic_pair(const Cell& cell, Rng& rng) {
    PopulationPair pop = PopulationPair::make(cell.family, cell.delta);
    SyntheticSource source_x(pop, SyntheticSource::Group::X, cell.rho);
    SyntheticSource source_y(pop, SyntheticSource::Group::Y, cell.rho);
    SamplePair pair;
    switch (cell.method) {
        case Method::SrsEl:
            pair.x = draw_srs(source_x, cell.nx, rng);
            pair.y = draw_srs(source_y, cell.ny, rng);
            break;
        case Method::BrssEl:
        case Method::BrssKer:
        case Method::DualEl:
            pair.x = draw_brss(source_x, cell.set_size, cell.nx / cell.set_size, rng);
            pair.y = draw_brss(source_y, cell.set_size, cell.ny / cell.set_size, rng);
            break;
        case Method::UrssEl:
            pair.x = draw_brss(source_x, cell.set_size, cell.nx / cell.set_size, rng);
            pair.y = draw_urss(source_y, AllocationPlan::two_stratum(cell.ny, cell.p_y), rng);
            break;
    }
    return pair;
}

namespace {

std::uint64_t cell_stream_key(std::uint64_t master, const Cell& cell) {
    std::uint64_t key = splitmix64(master);
    key = mix_key(key, static_cast<std::uint64_t>(cell.method));
    key = mix_key(key, static_cast<std::uint64_t>(cell.family));
    key = mix_key(key, double_bits(cell.delta));
    key = mix_key(key, static_cast<std::uint64_t>(cell.nx));
    key = mix_key(key, static_cast<std::uint64_t>(cell.ny));
    key = mix_key(key, static_cast<std::uint64_t>(cell.set_size));
    key = mix_key(key, double_bits(cell.rho));
    key = mix_key(key, double_bits(cell.p_y));
    std::uint64_t label_hash = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : cell.label) label_hash = (label_hash ^ c) * 1099511628211ULL;
    key = mix_key(key, label_hash);
    return key;
}

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

CellSummary run_cell(const Cell& cell, int replicates, double level, double true_delta,
                     std::uint64_t master_seed, int workers, const DrawFn& draw, Kernel kernel,
                     std::vector<ReplicateRecord>* records_out) {
    if (replicates < 1) throw ConfigError("replicates must be >= 1");
    const std::uint64_t cell_key = cell_stream_key(master_seed, cell);

    std::vector<ReplicateRecord> records(static_cast<std::size_t>(replicates));
    const auto run_range = [&](int begin, int end) {
        for (int rep = begin; rep < end; ++rep) {
            Rng rng(mix_key(cell_key, static_cast<std::uint64_t>(rep)));
            ReplicateRecord& rec = records[static_cast<std::size_t>(rep)];
            SamplePair pair = draw(cell, rng);
            try {
                ConfidenceInterval ci = compute_method_ci(cell.method, pair, level, kernel);
                rec.point = ci.point;
                rec.lower = ci.lower;
                rec.upper = ci.upper;
                rec.length = ci.length();
                rec.degenerate = ci.boundary;
                // Degenerate replicates are kept but scored as non-covering.
                rec.covered = !ci.boundary && ci.contains(true_delta);
            } catch (const DegenerateError&) {
                rec.point = std::numeric_limits<double>::quiet_NaN();
                rec.degenerate = true;
            }
        }
    };

    const int nworkers = std::min(resolve_workers(workers), replicates);
    if (nworkers <= 1) {
        run_range(0, replicates);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        const int chunk = (replicates + nworkers - 1) / nworkers;
        for (int t = 0; t < nworkers; ++t) {
            int begin = t * chunk;
            int end = std::min(replicates, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    CellSummary summary;
    summary.cell = cell;
    summary.replicates = replicates;
    double length_sum = 0.0, length_sq = 0.0, point_sum = 0.0;
    int covered = 0, degenerate = 0, points = 0;
    for (const auto& rec : records) {
        if (rec.covered) ++covered;
        if (rec.degenerate) ++degenerate;
        length_sum += rec.length;
        if (!std::isnan(rec.point)) {
            point_sum += rec.point;
            ++points;
        }
    }
    const double n = static_cast<double>(replicates);
    const double mean_length = length_sum / n;
    for (const auto& rec : records) length_sq += (rec.length - mean_length) * (rec.length - mean_length);
    summary.coverage = static_cast<double>(covered) / n;
    summary.avg_length = mean_length;
    summary.sd_length = replicates > 1 ? std::sqrt(length_sq / (n - 1.0)) : 0.0;
    summary.mean_point = points > 0 ? point_sum / static_cast<double>(points) : 0.0;
    summary.degenerate_count = degenerate;
    if (records_out) *records_out = std::move(records);
    return summary;
}

CellSummary run_cell(const Cell& cell, int replicates, double level, std::uint64_t master_seed,
                     int workers, std::vector<ReplicateRecord>* records) {
    return run_cell(cell, replicates, level, cell.delta, master_seed, workers,
                    draw_synthetic_pair, Kernel::Strict, records);
}

std::vector<CellSummary> run_sweep(const SimulationConfig& config,
                                   std::ostream* per_replicate_csv) {
    std::vector<Cell> cells = config.expand_cells();
    std::vector<CellSummary> summaries;
    summaries.reserve(cells.size());
    if (per_replicate_csv) write_per_replicate_header(*per_replicate_csv);
    for (const Cell& cell : cells) {
        std::vector<ReplicateRecord> records;
        summaries.push_back(run_cell(cell, config.replicates, config.level, config.seed,
                                     config.workers,
                                     per_replicate_csv ? &records : nullptr));
        if (per_replicate_csv) write_per_replicate_rows(*per_replicate_csv, cell, records);
    }
    return summaries;
}

namespace {

void write_cell_prefix(std::ostream& out, const Cell& cell) {
    out << method_to_string(cell.method) << ','
        << (cell.label.empty() ? family_to_string(cell.family) : cell.label) << ','
        << format_double(cell.delta) << ',' << cell.nx << ',' << cell.ny << ',' << cell.set_size
        << ',' << format_double(cell.rho) << ',' << format_double(cell.p_y);
}

}  // namespace

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& summaries) {
    out << "method,family,delta,n_x,n_y,set_size,rho,p_y,coverage,avg_length,sd_length,"
           "degenerate_count\n";
    for (const auto& s : summaries) {
        write_cell_prefix(out, s.cell);
        out << ',' << format_double(s.coverage) << ',' << format_double(s.avg_length) << ','
            << format_double(s.sd_length) << ',' << s.degenerate_count << '\n';
    }
}

void write_per_replicate_header(std::ostream& out) {
    out << "method,family,delta,n_x,n_y,set_size,rho,p_y,replicate,delta_hat,lower,upper,"
           "covered,length\n";
}

void write_per_replicate_rows(std::ostream& out, const Cell& cell,
                              const std::vector<ReplicateRecord>& records) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        write_cell_prefix(out, cell);
        out << ',' << i << ',' << format_double(r.point) << ',' << format_double(r.lower) << ','
            << format_double(r.upper) << ',' << (r.covered ? 1 : 0) << ','
            << format_double(r.length) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Presets

namespace {

SimulationConfig balanced_figure(Family family) {
    SimulationConfig config;
    config.methods = {Method::SrsEl, Method::BrssEl, Method::BrssKer};
    config.families = {family};
    config.deltas = {0.6, 0.8, 0.9, 0.95};
    config.sizes = {{20, 20}, {40, 40}, {80, 80}};
    config.set_sizes = {2, 4};
    config.rhos = {0.7, 0.9, 1.0};
    config.replicates = 5000;
    config.level = 0.95;
    config.seed = 20260823;
    config.has_seed = true;
    return config;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"figure1", "figure2", "figure3", "figure4", "table2"};
}

SimulationConfig preset_config(const std::string& name) {
    if (name == "figure1") return balanced_figure(Family::Normal);
    if (name == "figure2") return balanced_figure(Family::LogNormal);
    if (name == "figure3") return balanced_figure(Family::Uniform);
    if (name == "figure4") {
        SimulationConfig config;
        config.methods = {Method::SrsEl, Method::UrssEl};
        config.families = {Family::Normal, Family::LogNormal, Family::Uniform};
        config.deltas = {0.6, 0.8, 0.9, 0.95};
        config.sizes = {{20, 20}, {40, 40}, {80, 80}};
        config.set_sizes = {2};
        config.rhos = {1.0};
        config.p_ys = {0.3, 0.4, 0.5, 0.6, 0.7};
        config.replicates = 5000;
        config.level = 0.95;
        config.seed = 20260823;
        config.has_seed = true;
        return config;
    }
    if (name == "table2") {
        SimulationConfig config;
        config.methods = {Method::BrssEl, Method::DualEl};
        config.families = {Family::Normal};
        config.deltas = {0.8};
        config.sizes = {{40, 40}, {100, 40}, {200, 40}};
        config.set_sizes = {2};
        config.rhos = {1.0};
        config.replicates = 5000;
        config.level = 0.95;
        config.seed = 20260823;
        config.has_seed = true;
        return config;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace rssauc
