#pragma once

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "rsg/rational.hpp"
#include "rsg/semigroup.hpp"
#include "rsg/sphere.hpp"

namespace rsg::io {

using nlohmann::json;

// Maps: {"num":[[re,im],...], "den":[...]} in ascending powers, or
// {"moebius":[[re,im] x 4]} for (az+b)/(cz+d). Degree-1 maps are written in
// the Möbius form with ad - bc = 1.
json map_to_json(const RationalMap& f);
RationalMap map_from_json(const json& j);

// {"generators":[...], "group_mode":bool, "degree_cap":int, "labels":[...]}.
// Only the user's generators are written; group-mode inverses are rebuilt.
json spec_to_json(const SemigroupSpec& spec);
SemigroupSpec spec_from_json(const json& j);

SemigroupSpec load_spec(const std::string& path);

// Shortest decimal that reads back to the same double.
std::string format_double(double x);

// One record per line: "re im", or "inf".
void write_cloud_text(std::ostream& out, const PointCloud& cloud);
PointCloud read_cloud_text(std::istream& in);

// {"method":..., "params":{...}, "points":[{"re":..,"im":..} | {"inf":true}]}
json cloud_to_json(const PointCloud& cloud);
PointCloud cloud_from_json(const json& j);

// Reads either format, picked by a leading '{'.
PointCloud load_cloud(const std::string& path);

SpherePoint point_from_json(const json& j);
json point_to_json(const SpherePoint& p);

}  // namespace rsg::io
