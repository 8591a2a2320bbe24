#pragma once

#include <string>

#include "json.hpp"
#include "lle/disk_spectra.hpp"
#include "lle/geometry.hpp"
#include "lle/identities.hpp"
#include "lle/region_sim.hpp"

namespace lle::io {

using Json = nlohmann::ordered_json;

// {"type":"disk","R":1} | {"type":"star","coeffs":[c0,a1,b1,...]} |
// {"type":"polygon","vertices":[[x,y],...]}, each with an optional
// "center":[x,y] for disk and star. Unknown keys are rejected.
geometry::Region region_from_json(const Json& j);
// Accepts inline JSON text or @path to a JSON file.
geometry::Region parse_region(const std::string& text);
Json to_json(const geometry::Region& region);

Json to_json(const disk::LocalSpectrum& spectrum);
Json to_json(const region::AsymptoticFit& fit);
Json to_json(const identities::Check& check);
Json to_json(const identities::SuiteReport& report);

// Header row, "," separator, LF line endings, shortest round-trip numbers.
std::string to_csv(const region::ScalingSeries& series, const std::string& value_column);
std::string format_number(double value);

// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

}  // namespace lle::io
