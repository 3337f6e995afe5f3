#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rssauc/case_study.hpp"
#include "rssauc/errors.hpp"
#include "rssauc/populations.hpp"
#include "rssauc/random.hpp"

using namespace rssauc;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        static int counter = 0;
        path = "rssauc_test_" + std::to_string(counter++) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

PopulationDataset synthetic_dataset(int per_group, std::uint64_t seed, double delta) {
    PopulationPair pop = PopulationPair::make(Family::Normal, delta);
    Rng rng(seed);
    PopulationDataset ds;
    for (int i = 0; i < per_group; ++i) {
        double x = pop.draw_x(rng);
        ds.x_values.push_back(x);
        ds.x_concomitants.push_back(x);  // perfect ranking information
        double y = pop.draw_y(rng);
        ds.y_values.push_back(y);
        ds.y_concomitants.push_back(y);
    }
    return ds;
}

}  // namespace

TEST_CASE("two-record toy dataset has AUC one") {
    TempCsv file(
        "marker,disease,concomitant\n"
        "1.0,0,1.0\n"
        "5.0,1,5.0\n");
    PopulationDataset ds = load_dataset(file.path, {}, Orientation::HigherIsDiseased);
    CHECK(ds.x_values == std::vector<double>{1.0});
    CHECK(ds.y_values == std::vector<double>{5.0});
    CHECK(ds.population_auc() == 1.0);
}

TEST_CASE("orientation flip maps the AUC to its complement") {
    TempCsv file(
        "marker,disease,concomitant\n"
        "1.0,0,0\n"
        "2.0,0,0\n"
        "2.0,1,0\n"
        "3.0,1,0\n"
        "0.5,1,0\n");
    PopulationDataset higher = load_dataset(file.path, {}, Orientation::HigherIsDiseased);
    PopulationDataset lower = load_dataset(file.path, {}, Orientation::LowerIsDiseased);
    double a = higher.population_auc();
    CHECK(lower.population_auc() == doctest::Approx(1.0 - a).epsilon(1e-14));
}

TEST_CASE("population AUC equals tie-half pair enumeration") {
    PopulationDataset ds;
    Rng rng(61);
    for (int i = 0; i < 80; ++i) {
        ds.x_values.push_back(std::round(rng.normal() * 4.0) / 4.0);
        ds.y_values.push_back(std::round((rng.normal() + 0.8) * 4.0) / 4.0);
    }
    double oracle = oracles::mw_classical(ds.x_values, ds.y_values, Kernel::TieHalf);
    CHECK(ds.population_auc() == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("custom column names and dropped rows") {
    TempCsv file(
        "id,bmi,diab,weight\n"
        "1,20.0,0,70\n"
        "2,NA,0,71\n"
        "3,31.5,1,95\n"
        "4,28.0,1,\n"
        "5,22.5,0,66\n");
    ColumnMap columns{"bmi", "diab", "weight"};
    PopulationDataset ds = load_dataset(file.path, columns, Orientation::HigherIsDiseased);
    CHECK(ds.x_values.size() == 2);
    CHECK(ds.y_values.size() == 1);
    CHECK(ds.dropped_rows == 2);
}

TEST_CASE("load errors are descriptive") {
    TempCsv missing_column("marker,disease\n1,0\n2,1\n");
    CHECK_THROWS_AS(load_dataset(missing_column.path, {}, Orientation::HigherIsDiseased),
                    DataError);
    TempCsv garbage("marker,disease,concomitant\nok?,0,1\n2,1,1\n");
    CHECK_THROWS_AS(load_dataset(garbage.path, {}, Orientation::HigherIsDiseased), DataError);
    TempCsv bad_status("marker,disease,concomitant\n1,2,1\n2,1,1\n");
    CHECK_THROWS_AS(load_dataset(bad_status.path, {}, Orientation::HigherIsDiseased), DataError);
    TempCsv one_group("marker,disease,concomitant\n1,1,1\n2,1,1\n");
    CHECK_THROWS_AS(load_dataset(one_group.path, {}, Orientation::HigherIsDiseased), DataError);
    CHECK_THROWS_AS(load_dataset("/nonexistent/file.csv", {}, Orientation::HigherIsDiseased),
                    DataError);
    CHECK_THROWS_AS(orientation_from_string("sideways"), ConfigError);
}

TEST_CASE("insufficient population is a configuration error") {
    PopulationDataset ds = synthetic_dataset(3, 62, 0.8);
    CaseStudyConfig config;
    config.sizes = {{8, 8}};
    config.set_sizes = {4};  // larger than either group
    config.replicates = 2;
    config.seed = 1;
    CHECK_THROWS_AS(run_case_sweep(ds, config), ConfigError);
}

TEST_CASE("perfect concomitant makes BRSS-EL shorter than SRS-EL") {
    PopulationDataset ds = synthetic_dataset(800, 63, 0.8);
    CaseStudyConfig config;
    config.methods = {Method::SrsEl, Method::BrssEl};
    config.sizes = {{40, 40}};
    config.replicates = 400;
    config.seed = 64;
    config.workers = 4;
    auto summaries = run_case_sweep(ds, config);
    REQUIRE(summaries.size() == 2);
    double srs_length = 0.0, brss_length = 0.0;
    for (const auto& s : summaries) {
        CHECK(s.cell.label == "case");
        if (s.cell.method == Method::SrsEl) srs_length = s.avg_length;
        if (s.cell.method == Method::BrssEl) brss_length = s.avg_length;
    }
    CHECK(brss_length < srs_length);
}

TEST_CASE("frozen synthetic population agrees with the synthetic sweep") {
    const double delta = 0.8;
    PopulationDataset ds = synthetic_dataset(6000, 65, delta);
    CHECK(ds.population_auc() == doctest::Approx(delta).epsilon(0.02));

    CaseStudyConfig config;
    config.methods = {Method::BrssEl};
    config.sizes = {{40, 40}};
    config.replicates = 1500;
    config.seed = 66;
    config.workers = 4;
    auto case_summary = run_case_sweep(ds, config).at(0);

    Cell cell;
    cell.method = Method::BrssEl;
    cell.family = Family::Normal;
    cell.delta = delta;
    cell.nx = cell.ny = 40;
    cell.set_size = 2;
    cell.rho = 1.0;
    CellSummary synth_summary = run_cell(cell, 1500, 0.95, 67, 4);

    // Coverage within 3 binomial SEs of each other; lengths within 0.01.
    CHECK(std::abs(case_summary.coverage - synth_summary.coverage) < 0.025);
    CHECK(std::abs(case_summary.avg_length - synth_summary.avg_length) < 0.01);
}
