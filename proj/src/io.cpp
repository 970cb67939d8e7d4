#include "lmk/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lmk {

std::string format_double(double value) {
    char buffer[32];
    const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, res.ptr);
}

double parse_double(const std::string& field) {
    std::size_t begin = field.find_first_not_of(" \t\r");
    std::size_t end = field.find_last_not_of(" \t\r");
    require(begin != std::string::npos, errc::parse, "empty numeric field");
    const char* first = field.data() + begin;
    const char* last = field.data() + end + 1;
    double value = 0.0;
    const auto res = std::from_chars(first, last, value);
    require(res.ec == std::errc() && res.ptr == last, errc::parse,
            "not a number: '" + field + "'");
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::parse, "cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

PointCloud read_coordinate_csv(const std::string& path) {
    const auto lines = read_lines(path);
    require(lines.size() >= 2, errc::parse, path + ": need a header and at least one row");
    const std::size_t dim = split_csv_line(lines[0]).size();
    PointCloud cloud;
    cloud.dim = dim;
    cloud.n = lines.size() - 1;
    cloud.coords.reserve(cloud.n * dim);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto fields = split_csv_line(lines[r]);
        require(fields.size() == dim, errc::parse,
                path + ": row " + std::to_string(r) + " has wrong width");
        for (const auto& f : fields) cloud.coords.push_back(parse_double(f));
    }
    return cloud;
}

DissimilaritySpace read_matrix_csv(const std::string& path, bool symmetric, double tolerance) {
    const auto lines = read_lines(path);
    const std::size_t n = lines.size();
    require(n >= 1, errc::parse, path + ": empty matrix");
    std::vector<double> values;
    values.reserve(n * n);
    for (const auto& line : lines) {
        const auto fields = split_csv_line(line);
        require(fields.size() == n, errc::parse, path + ": matrix is not square");
        for (const auto& f : fields) values.push_back(parse_double(f));
    }
    return build_space(values, n, symmetric, tolerance);
}

DissimilaritySpace read_gower_csv(const std::string& path, const std::vector<std::string>& types,
                                  double tolerance) {
    const auto lines = read_lines(path);
    require(lines.size() >= 2, errc::parse, path + ": need a header and at least one row");
    const std::size_t width = split_csv_line(lines[0]).size();
    require(types.size() == width, errc::parse,
            path + ": type declarations do not match the column count");

    std::vector<GowerColumn> columns(width);
    for (std::size_t c = 0; c < width; ++c) {
        if (types[c] == "num")
            columns[c].kind = GowerColumn::Kind::numeric;
        else if (types[c] == "cat")
            columns[c].kind = GowerColumn::Kind::categorical;
        else
            fail(errc::parse, "column type must be num or cat, got '" + types[c] + "'");
    }
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto fields = split_csv_line(lines[r]);
        require(fields.size() == width, errc::parse,
                path + ": row " + std::to_string(r) + " has wrong width");
        for (std::size_t c = 0; c < width; ++c) {
            if (columns[c].kind == GowerColumn::Kind::numeric) {
                try {
                    columns[c].numeric.push_back(parse_double(fields[c]));
                } catch (const error&) {
                    fail(errc::mixed_type_column, path + ": non-numeric value '" + fields[c] +
                                                      "' in numeric column " + std::to_string(c));
                }
            } else {
                columns[c].codes.push_back(fields[c]);
            }
        }
    }
    return gower_distance_space(columns, tolerance);
}

OutcomeTable read_outcome_csv(const std::string& path, std::size_t expected_size) {
    const auto lines = read_lines(path);
    require(lines.size() == expected_size + 1, errc::parse,
            path + ": expected " + std::to_string(expected_size) + " outcome rows");
    const auto header = split_csv_line(lines[0]);
    require(header.size() == 2 || header.size() == 3, errc::parse,
            path + ": outcome table needs 2 or 3 columns");
    const bool has_period = header.size() == 3;

    OutcomeTable table;
    table.outcomes.assign(expected_size, -1);
    if (has_period) table.periods.assign(expected_size, "");
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto fields = split_csv_line(lines[r]);
        require(fields.size() == header.size(), errc::parse,
                path + ": row " + std::to_string(r) + " has wrong width");
        const double idx = parse_double(fields[0]);
        const auto point = static_cast<std::size_t>(idx);
        require(idx == std::floor(idx) && point < expected_size, errc::parse,
                path + ": point_id out of range at row " + std::to_string(r));
        require(table.outcomes[point] == -1, errc::parse,
                path + ": duplicate point_id " + fields[0]);
        const double y = parse_double(fields[1]);
        require(y == 0.0 || y == 1.0, errc::parse, path + ": outcomes must be 0 or 1");
        table.outcomes[point] = static_cast<int>(y);
        if (has_period) table.periods[point] = fields[2];
    }
    return table;
}

std::string coordinate_csv(const PointCloud& cloud) {
    std::ostringstream out;
    out << (cloud.dim == 3 ? "x,y,z" : cloud.dim == 2 ? "x,y" : "x");
    out << '\n';
    for (std::size_t i = 0; i < cloud.n; ++i) {
        for (std::size_t d = 0; d < cloud.dim; ++d) {
            if (d) out << ',';
            out << format_double(cloud.coords[i * cloud.dim + d]);
        }
        out << '\n';
    }
    return out.str();
}

void write_coordinate_csv(const std::string& path, const PointCloud& cloud) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), errc::parse, "cannot write " + path);
    out << coordinate_csv(cloud);
}

std::string landmark_result_json(const SamplerConfig& config, const LandmarkResult& result,
                                 const Cover& cover) {
    nlohmann::json doc;
    doc["procedure"] = procedure_name(result.procedure);
    doc["seed_rule"] = seed_rule_name(config.seed_rule);
    doc["tie_rule"] = tie_rule_name(config.tie_rule);
    doc["rng_seed"] = config.rng_seed;
    doc["landmarks"] = result.landmarks;
    auto steps = nlohmann::json::array();
    for (const auto& step : result.per_step) {
        nlohmann::json s;
        s["landmark"] = step.landmark;
        s["cover_param"] = cover.kind == CoverKind::neighborhood && step.cardinality
                               ? static_cast<double>(*step.cardinality)
                               : step.radius;
        steps.push_back(std::move(s));
    }
    doc["per_step"] = std::move(steps);
    doc["ext"] = {{"mult", cover.ext_mult}, {"add", cover.ext_add}};
    doc["sets"] = cover.sets;
    return doc.dump(2) + "\n";
}

std::string procedure_name(Procedure p) {
    switch (p) {
        case Procedure::maxmin: return "maxmin";
        case Procedure::lastfirst: return "lastfirst";
        case Procedure::random_sample: return "random";
    }
    return "unknown";
}

Procedure procedure_from_name(const std::string& name) {
    if (name == "maxmin") return Procedure::maxmin;
    if (name == "lastfirst") return Procedure::lastfirst;
    if (name == "random") return Procedure::random_sample;
    fail(errc::config, "unknown procedure: " + name);
}

std::string seed_rule_name(SeedRule r) {
    switch (r) {
        case SeedRule::first_index: return "first";
        case SeedRule::random: return "random";
        case SeedRule::chebyshev: return "chebyshev";
    }
    return "unknown";
}

SeedRule seed_rule_from_name(const std::string& name) {
    if (name == "first") return SeedRule::first_index;
    if (name == "random") return SeedRule::random;
    if (name == "chebyshev") return SeedRule::chebyshev;
    fail(errc::config, "unknown seed rule: " + name);
}

std::string tie_rule_name(TieRule r) {
    switch (r) {
        case TieRule::first_index: return "first";
        case TieRule::random: return "random";
        case TieRule::iterative_refinement: return "refine";
    }
    return "unknown";
}

TieRule tie_rule_from_name(const std::string& name) {
    if (name == "first") return TieRule::first_index;
    if (name == "random") return TieRule::random;
    if (name == "refine") return TieRule::iterative_refinement;
    fail(errc::config, "unknown tie rule: " + name);
}

}  // namespace lmk
