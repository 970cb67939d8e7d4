#pragma once

#include <string>
#include <vector>

#include "lmk/landmark.hpp"
#include "lmk/space.hpp"
#include "lmk/synth.hpp"

namespace lmk {

/// Shortest round-trip decimal form of a double (locale-free, via
/// std::to_chars); integers print without a decimal point.
std::string format_double(double value);

/// Exact nearest decimal-to-binary parse; throws errc::parse on trailing
/// garbage or empty fields.
double parse_double(const std::string& field);

std::vector<std::string> split_csv_line(const std::string& line);

/// Coordinate table: one header line, then numeric rows of equal width.
PointCloud read_coordinate_csv(const std::string& path);

/// Square dissimilarity matrix: numeric rows, no header; the symmetry flag
/// comes from the caller.
DissimilaritySpace read_matrix_csv(const std::string& path, bool symmetric, double tolerance);

/// Mixed-type table for the Gower dissimilarity: header line, then rows;
/// column types declared as "num" or "cat" by the caller.
DissimilaritySpace read_gower_csv(const std::string& path, const std::vector<std::string>& types,
                                  double tolerance);

/// Outcome table `point_id,outcome[,period]` with header. point_id must be
/// 0..n-1, each exactly once.
struct OutcomeTable {
    std::vector<int> outcomes;
    std::vector<std::string> periods;  // empty when no period column
};
OutcomeTable read_outcome_csv(const std::string& path, std::size_t expected_size);

void write_coordinate_csv(const std::string& path, const PointCloud& cloud);
std::string coordinate_csv(const PointCloud& cloud);

/// JSON document for a landmark run:
/// {procedure, seed_rule, tie_rule, rng_seed, landmarks, per_step, ext, sets}.
std::string landmark_result_json(const SamplerConfig& config, const LandmarkResult& result,
                                 const Cover& cover);

std::string procedure_name(Procedure p);
Procedure procedure_from_name(const std::string& name);
std::string seed_rule_name(SeedRule r);
SeedRule seed_rule_from_name(const std::string& name);
std::string tie_rule_name(TieRule r);
TieRule tie_rule_from_name(const std::string& name);

}  // namespace lmk
