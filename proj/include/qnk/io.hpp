#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qnk/complex.hpp"
#include "qnk/convergence.hpp"
#include "qnk/flat_associate.hpp"
#include "qnk/intersection.hpp"
#include "qnk/linearization.hpp"
#include "qnk/median.hpp"
#include "qnk/quality.hpp"

namespace qnk {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// {ambient:{kind, period?}, vertices:[[x,y,z]], tets:[[i,j,k,l]]}. Tets are written sorted.
json complex_to_json(const Complex3& c);
/// Throws InvalidInput on malformed documents plus everything build_complex throws.
Complex3 complex_from_json(const json& j);
Complex3 read_complex_file(const std::string& path);
void write_complex_file(const std::string& path, const Complex3& c);

/// {edges:[{a, b, polyline:[[x,y,z]...]}]}; polylines given from b to a are reversed.
CurvedEdgeTable edge_table_from_json(const json& j, const Complex3& c);

json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline. Keys come out sorted.
void write_json_file(const std::string& path, const json& j);

/// Report envelope shared by every subcommand.
json report_header(const std::string& command, std::uint64_t seed, const json& tolerances);

json to_json(const SimplexQuality& q, int tet_id);
json to_json(const LevelSummary& s);
json to_json(const Violation& v);
json to_json(const TamenessReport& t);
json to_json(const Cylinder& c);
json to_json(const ConvergenceRow& r);
json to_json(const LanternRow& r);

/// Classification summary of a pattern: predicates, class counts, components,
/// arcs, violations, cylinders and tameness reports.
json pattern_to_json(const IntersectionPattern& p, const Complex3& c, int samples = 64);
json flat_associate_to_json(const FlatAssociateSurface& f);

}  // namespace qnk
