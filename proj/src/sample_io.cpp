#include "rssauc/sample_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "rssauc/errors.hpp"

namespace rssauc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

double parse_double(const std::string& s, const char* what, std::size_t line_no) {
    double value{};
    auto* begin = s.data();
    auto* end = s.data() + s.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    while (ptr < end && (*ptr == ' ' || *ptr == '\t' || *ptr == '\r')) ++ptr;
    if (ec != std::errc() || ptr != end)
        throw DataError("line " + std::to_string(line_no) + ": unparseable " + what + " '" + s +
                        "'");
    return value;
}

long parse_int(const std::string& s, const char* what, std::size_t line_no) {
    double v = parse_double(s, what, line_no);
    long i = static_cast<long>(v);
    if (static_cast<double>(i) != v)
        throw DataError("line " + std::to_string(line_no) + ": " + what + " must be an integer");
    return i;
}

}  // namespace

SamplePair read_sample_pair_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty sample file");

    // Rows may arrive in any order; collect by (group, stratum, cycle).
    struct Row {
        long stratum, cycle;
        double value;
    };
    std::vector<Row> rows_x, rows_y;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw DataError("line " + std::to_string(line_no) + ": expected 4 columns");
        std::string group = fields[0];
        while (!group.empty() && (group.back() == ' ' || group.back() == '\r')) group.pop_back();
        long stratum = parse_int(fields[1], "stratum", line_no);
        long cycle = parse_int(fields[2], "cycle", line_no);
        double value = parse_double(fields[3], "value", line_no);
        if (stratum < 1 || cycle < 1)
            throw DataError("line " + std::to_string(line_no) +
                            ": stratum and cycle must be >= 1");
        if (group == "x")
            rows_x.push_back({stratum, cycle, value});
        else if (group == "y")
            rows_y.push_back({stratum, cycle, value});
        else
            throw DataError("line " + std::to_string(line_no) + ": group must be 'x' or 'y'");
    }

    auto assemble = [](std::vector<Row>& rows, const char* group) {
        if (rows.empty()) throw DataError(std::string("no rows for group ") + group);
        long n = 0;
        for (const auto& r : rows) n = std::max(n, r.stratum);
        RankedSetSample sample;
        sample.strata.resize(static_cast<std::size_t>(n));
        std::vector<std::vector<std::pair<long, double>>> staged(static_cast<std::size_t>(n));
        for (const auto& r : rows)
            staged[static_cast<std::size_t>(r.stratum - 1)].push_back({r.cycle, r.value});
        for (std::size_t s = 0; s < staged.size(); ++s) {
            auto& entries = staged[s];
            if (entries.empty())
                throw DataError(std::string("group ") + group + ": stratum " +
                                std::to_string(s + 1) + " has no rows");
            std::sort(entries.begin(), entries.end());
            for (std::size_t i = 0; i < entries.size(); ++i) {
                if (entries[i].first != static_cast<long>(i + 1))
                    throw DataError(std::string("group ") + group + ": stratum " +
                                    std::to_string(s + 1) +
                                    " cycles are not contiguous from 1");
                sample.strata[s].push_back(entries[i].second);
            }
        }
        return sample;
    };

    SamplePair pair;
    pair.x = assemble(rows_x, "x");
    pair.y = assemble(rows_y, "y");
    return pair;
}

SamplePair read_sample_pair_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open sample file: " + path);
    return read_sample_pair_csv(in);
}

void write_sample_pair_csv(std::ostream& out, const SamplePair& pair) {
    out << "group,stratum,cycle,value\n";
    char buf[64];
    auto dump = [&](const RankedSetSample& sample, const char* group) {
        for (std::size_t r = 0; r < sample.strata.size(); ++r)
            for (std::size_t s = 0; s < sample.strata[r].size(); ++s) {
                std::snprintf(buf, sizeof(buf), "%.17g", sample.strata[r][s]);
                out << group << ',' << (r + 1) << ',' << (s + 1) << ',' << buf << '\n';
            }
    };
    dump(pair.x, "x");
    dump(pair.y, "y");
}

void write_sample_pair_csv_file(const std::string& path, const SamplePair& pair) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file: " + path);
    write_sample_pair_csv(out, pair);
}

}  // namespace rssauc
