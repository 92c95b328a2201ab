#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "scatter/inversion.hpp"
#include "scatter/phaseless.hpp"

namespace scatter::io {

using nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First line: JSON header {delta, seed, nf, pairs:[{angles}], ks}; then a
/// CSV block with columns l,m,j,intensity (1-based indices).
void write_dataset(const std::filesystem::path& path, const PhaselessDataset& ds);
PhaselessDataset read_dataset(const std::filesystem::path& path);

/// JSON header {k, angles, bc, n_f} followed by theta,re,im rows.
void write_far_field(const std::filesystem::path& path, const FarFieldPattern& p,
                     const BoundaryCondition& bc);
FarFieldPattern read_far_field(const std::filesystem::path& path);

json bc_to_json(const BoundaryCondition& bc);
BoundaryCondition bc_from_json(const json& j);

json state_to_json(const IterateState& s);
IterateState state_from_json(const json& j);

void write_state(const std::filesystem::path& path, const IterateState& s);
IterateState read_state(const std::filesystem::path& path);

/// Columns t,x,y on `samples` equispaced parameters.
void write_polyline(const std::filesystem::path& path, const Curve& curve, int samples = 256);
std::vector<std::vector<double>> read_polyline(const std::filesystem::path& path);

json report_to_json(const InversionResult& r);
InversionResult report_from_json(const json& j);

/// Plain numeric CSV with a header row.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> read_table(const std::filesystem::path& path,
                                            std::vector<std::string>* header = nullptr);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

/// Angles of incidence directions in degrees.
std::vector<double> direction_degrees(const Incidence& inc);

}  // namespace scatter::io
