// rssauc command-line interface.
//
// Subcommands:
//   estimate    point AUC estimate from a sample CSV
//   ci          empirical-likelihood (or kernel) confidence interval
//   simulate    Monte Carlo coverage/length sweep from a JSON config or preset
//   case-study  finite-population resampling study on a marker dataset
//   presets     list built-in sweep configurations or dump one as JSON
//
// Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 numerical degeneracy.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rssauc/case_study.hpp"
#include "rssauc/el.hpp"
#include "rssauc/errors.hpp"
#include "rssauc/kernel_baseline.hpp"
#include "rssauc/sample_io.hpp"
#include "rssauc/simulate.hpp"
#include "rssauc/special.hpp"

namespace {

using namespace rssauc;

Kernel kernel_from_string(const std::string& name) {
    if (name == "strict") return Kernel::Strict;
    if (name == "tiehalf") return Kernel::TieHalf;
    throw ConfigError("unknown kernel '" + name + "' (expected strict|tiehalf)");
}

struct GeometryEcho {
    std::string describe(const RankedSetSample& s, const char* group) const {
        std::ostringstream os;
        os << group << ": set_size=" << s.set_size() << " counts=";
        auto counts = s.counts();
        for (std::size_t i = 0; i < counts.size(); ++i)
            os << (i ? "," : "") << counts[i];
        os << " total=" << s.total_size();
        return os.str();
    }
};

int cmd_estimate(const std::string& sample_path, const std::string& kernel_name, bool dual,
                 bool as_json) {
    SamplePair pair = read_sample_pair_csv_file(sample_path);
    pair.x.validate();
    pair.y.validate();
    Kernel kernel = kernel_from_string(kernel_name);
    double delta_hat = mw_auc(pair.x, pair.y, kernel);
    double delta_dual = mw_auc_dual(pair.x, pair.y, kernel);
    bool boundary = delta_hat <= 0.0 || delta_hat >= 1.0;
    if (as_json) {
        nlohmann::json out{{"delta_hat", delta_hat},
                           {"boundary", boundary},
                           {"n_x", pair.x.total_size()},
                           {"n_y", pair.y.total_size()},
                           {"set_size_x", pair.x.set_size()},
                           {"set_size_y", pair.y.set_size()}};
        if (dual) out["delta_hat_dual"] = delta_dual;
        std::cout << out.dump() << '\n';
        return 0;
    }
    GeometryEcho echo;
    std::cout << echo.describe(pair.x, "x") << '\n' << echo.describe(pair.y, "y") << '\n';
    std::cout << "delta_hat = " << format_double(delta_hat) << '\n';
    if (dual) std::cout << "delta_hat_dual = " << format_double(delta_dual) << '\n';
    if (boundary)
        std::cout << "warning: point estimate on the boundary (complete separation); "
                     "interval inversion will collapse to a point\n";
    return 0;
}

int cmd_ci(const std::string& sample_path, const std::string& method_name, double level,
           const std::string& kernel_name, bool as_json) {
    SamplePair pair = read_sample_pair_csv_file(sample_path);
    pair.x.validate();
    pair.y.validate();
    Method method = method_from_string(method_name);
    Kernel kernel = kernel_from_string(kernel_name);
    if (method == Method::SrsEl) {
        // srs-el ignores the ranking design: strata are pooled into a plain
        // random sample before estimation.
        auto pool = [](const RankedSetSample& s) {
            std::vector<double> all;
            for (const auto& stratum : s.strata) all.insert(all.end(), stratum.begin(), stratum.end());
            return RankedSetSample::from_pooled(std::move(all));
        };
        pair.x = pool(pair.x);
        pair.y = pool(pair.y);
    }
    ConfidenceInterval ci = compute_method_ci(method, pair, level, kernel);
    double threshold = chi_square_quantile(level, 1.0);
    if (as_json) {
        nlohmann::json out{{"method", method_to_string(method)},
                           {"level", level},
                           {"lower", ci.lower},
                           {"upper", ci.upper},
                           {"delta_hat", ci.point},
                           {"scale", ci.scale_at_point},
                           {"threshold", threshold},
                           {"lambda_at_lower", ci.lambda_at_lower},
                           {"lambda_at_upper", ci.lambda_at_upper},
                           {"clipped_lower", ci.clipped_lower},
                           {"clipped_upper", ci.clipped_upper},
                           {"boundary", ci.boundary}};
        std::cout << out.dump() << '\n';
        return 0;
    }
    std::cout << "method     = " << method_to_string(method) << '\n'
              << "level      = " << format_double(level) << '\n'
              << "delta_hat  = " << format_double(ci.point) << '\n'
              << "lower      = " << format_double(ci.lower) << '\n'
              << "upper      = " << format_double(ci.upper) << '\n'
              << "scale r    = " << format_double(ci.scale_at_point) << '\n'
              << "threshold  = " << format_double(threshold) << '\n'
              << "lambda(lo) = " << format_double(ci.lambda_at_lower) << '\n'
              << "lambda(hi) = " << format_double(ci.lambda_at_upper) << '\n';
    if (ci.clipped_lower || ci.clipped_upper)
        std::cout << "note: endpoint clipped at the [0,1] margin\n";
    if (ci.boundary)
        std::cout << "note: degenerate placement hull; interval collapsed to the point "
                     "estimate\n";
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& preset_name,
                 std::uint64_t seed, bool seed_given, int workers, bool workers_given,
                 const std::string& out_path, const std::string& replicates_path) {
    if (config_path.empty() == preset_name.empty())
        throw ConfigError("simulate requires exactly one of --config or --preset");
    SimulationConfig config = config_path.empty() ? preset_config(preset_name)
                                                  : SimulationConfig::from_json_file(config_path);
    if (seed_given) {
        config.seed = seed;
        config.has_seed = true;
    }
    if (!config.has_seed)
        throw ConfigError("simulate requires a seed (--seed or \"seed\" in the config)");
    if (workers_given) config.workers = workers;
    if (out_path.empty()) throw ConfigError("simulate requires --out for the summary CSV");

    std::ofstream replicates_out;
    std::ostream* replicates_stream = nullptr;
    if (!replicates_path.empty()) {
        replicates_out.open(replicates_path);
        if (!replicates_out) throw DataError("cannot open output file: " + replicates_path);
        replicates_stream = &replicates_out;
    }
    auto summaries = run_sweep(config, replicates_stream);
    std::ofstream out(out_path);
    if (!out) throw DataError("cannot open output file: " + out_path);
    write_summary_csv(out, summaries);
    std::cout << "wrote " << summaries.size() << " summary rows to " << out_path << '\n';
    return 0;
}

ColumnMap parse_columns(const std::string& spec) {
    if (spec.empty()) return {};
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) parts.push_back(part);
    if (parts.size() != 3)
        throw ConfigError("--columns expects 'marker,disease,concomitant' (3 names), got '" +
                          spec + "'");
    return ColumnMap{parts[0], parts[1], parts[2]};
}

int cmd_case_study(const std::string& data_path, const std::string& columns_spec,
                   const std::string& orientation_name,
                   const std::vector<std::string>& method_names,
                   const std::vector<std::string>& size_specs,
                   const std::vector<int>& set_sizes, const std::vector<double>& p_ys,
                   int replicates, double level, std::uint64_t seed, int workers,
                   const std::string& out_path) {
    PopulationDataset dataset = load_dataset(data_path, parse_columns(columns_spec),
                                             orientation_from_string(orientation_name));
    CaseStudyConfig config;
    if (!method_names.empty()) {
        config.methods.clear();
        for (const auto& name : method_names) config.methods.push_back(method_from_string(name));
    }
    for (const auto& spec : size_specs) {
        SizePair size;
        char sep = 0;
        std::stringstream ss(spec);
        if (!(ss >> size.nx)) throw ConfigError("bad --size '" + spec + "' (expected NX,NY)");
        if (ss >> sep >> size.ny) {
            if (sep != ',') throw ConfigError("bad --size '" + spec + "' (expected NX,NY)");
        } else {
            size.ny = size.nx;
        }
        config.sizes.push_back(size);
    }
    if (!set_sizes.empty()) config.set_sizes = set_sizes;
    if (!p_ys.empty()) config.p_ys = p_ys;
    config.replicates = replicates;
    config.level = level;
    config.seed = seed;
    config.workers = workers;
    if (out_path.empty()) throw ConfigError("case-study requires --out for the summary CSV");

    std::cout << "population: n_x=" << dataset.x_values.size()
              << " n_y=" << dataset.y_values.size() << " dropped_rows=" << dataset.dropped_rows
              << " population_auc=" << format_double(dataset.population_auc()) << '\n';
    auto summaries = run_case_sweep(dataset, config);
    std::ofstream out(out_path);
    if (!out) throw DataError("cannot open output file: " + out_path);
    write_summary_csv(out, summaries);
    std::cout << "wrote " << summaries.size() << " summary rows to " << out_path << '\n';
    return 0;
}

int cmd_presets(const std::string& name) {
    if (name.empty()) {
        for (const auto& preset : preset_names()) std::cout << preset << '\n';
        return 0;
    }
    std::cout << preset_config(name).to_json_text() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Empirical-likelihood AUC intervals from ranked set samples"};
    app.require_subcommand(1);

    std::string sample_path, kernel_name = "strict", method_name = "brss-el";
    bool dual = false, as_json = false;
    double level = 0.95;

    auto* estimate = app.add_subcommand("estimate", "Point AUC estimate from a sample CSV");
    estimate->add_option("--sample", sample_path, "sample CSV (group,stratum,cycle,value)")
        ->required();
    estimate->add_option("--kernel", kernel_name, "comparison kernel: strict|tiehalf");
    estimate->add_flag("--dual", dual, "also print the dual estimate");
    estimate->add_flag("--json", as_json, "machine-readable flat JSON output");

    std::string ci_sample, ci_kernel = "strict", ci_method = "brss-el";
    bool ci_json = false;
    double ci_level = 0.95;
    auto* ci = app.add_subcommand("ci", "Confidence interval from a sample CSV");
    ci->add_option("--sample", ci_sample, "sample CSV (group,stratum,cycle,value)")->required();
    ci->add_option("--method", ci_method, "srs-el|brss-el|urss-el|brss-ker|dual-el");
    ci->add_option("--level", ci_level, "confidence level in (0,1)");
    ci->add_option("--kernel", ci_kernel, "comparison kernel: strict|tiehalf");
    ci->add_flag("--json", ci_json, "machine-readable flat JSON output");

    std::string config_path, preset_name, out_path, replicates_path;
    std::uint64_t seed = 0;
    int workers = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo coverage/length sweep");
    auto* config_opt = simulate->add_option("--config", config_path, "sweep config JSON");
    auto* preset_opt = simulate->add_option("--preset", preset_name, "built-in preset name");
    auto* seed_opt = simulate->add_option("--seed", seed, "master seed (required)");
    auto* workers_opt = simulate->add_option("--workers", workers, "worker threads (0 = auto)");
    simulate->add_option("--out", out_path, "summary CSV output path")->required();
    simulate->add_option("--replicates-out", replicates_path, "per-replicate CSV output path");

    std::string cs_data, cs_columns, cs_orientation = "higher", cs_out;
    std::vector<std::string> cs_methods, cs_sizes;
    std::vector<int> cs_set_sizes;
    std::vector<double> cs_p_ys;
    int cs_replicates = 5000, cs_workers = 0;
    double cs_level = 0.95;
    std::uint64_t cs_seed = 0;
    auto* case_study = app.add_subcommand("case-study", "Finite-population resampling study");
    case_study->add_option("--data", cs_data, "population dataset CSV")->required();
    case_study->add_option("--columns", cs_columns,
                           "column names as 'marker,disease,concomitant'");
    case_study->add_option("--orientation", cs_orientation,
                           "higher|lower (which marker direction indicates disease)");
    case_study->add_option("--method", cs_methods, "methods (repeatable)");
    case_study->add_option("--size", cs_sizes, "sample sizes 'NX,NY' or 'N' (repeatable)")
        ->required();
    case_study->add_option("--set-size", cs_set_sizes, "ranking set sizes (repeatable)");
    case_study->add_option("--p-y", cs_p_ys, "unbalanced first-stratum proportions");
    case_study->add_option("--replicates", cs_replicates, "Monte Carlo replicates");
    case_study->add_option("--level", cs_level, "confidence level in (0,1)");
    case_study->add_option("--seed", cs_seed, "master seed (required)")->required();
    case_study->add_option("--workers", cs_workers, "worker threads (0 = auto)");
    case_study->add_option("--out", cs_out, "summary CSV output path")->required();

    std::string presets_name;
    auto* presets = app.add_subcommand("presets", "List presets or dump one as JSON");
    presets->add_option("name", presets_name, "preset to dump as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (estimate->parsed()) return cmd_estimate(sample_path, kernel_name, dual, as_json);
        if (ci->parsed()) return cmd_ci(ci_sample, ci_method, ci_level, ci_kernel, ci_json);
        if (simulate->parsed())
            return cmd_simulate(config_path, preset_name, seed, !seed_opt->empty(), workers,
                                !workers_opt->empty(), out_path, replicates_path);
        if (case_study->parsed())
            return cmd_case_study(cs_data, cs_columns, cs_orientation, cs_methods, cs_sizes,
                                  cs_set_sizes, cs_p_ys, cs_replicates, cs_level, cs_seed,
                                  cs_workers, cs_out);
        if (presets->parsed()) return cmd_presets(presets_name);
        (void)config_opt;
        (void)preset_opt;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const DegenerateError& e) {
        std::cerr << "degeneracy: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
