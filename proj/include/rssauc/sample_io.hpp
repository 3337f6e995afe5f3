#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "rssauc/sample.hpp"

namespace rssauc {

// Sample interchange CSV. Columns: group (x|y), stratum (1-based), cycle
// (1-based position within the stratum), value. Header row required.
struct SamplePair {
    RankedSetSample x;
    RankedSetSample y;
};

SamplePair read_sample_pair_csv(std::istream& in);
SamplePair read_sample_pair_csv_file(const std::string& path);

void write_sample_pair_csv(std::ostream& out, const SamplePair& pair);
void write_sample_pair_csv_file(const std::string& path, const SamplePair& pair);

}  // namespace rssauc
