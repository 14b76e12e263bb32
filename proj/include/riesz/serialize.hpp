#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "riesz/fekete.hpp"

namespace riesz::io {

using Json = nlohmann::ordered_json;

// value rounded to 15 significant digits (null when not finite)
Json number(double x);
// 9 significant digits for CSV cells
std::string csv_number(double x);
std::string csv_row(const std::vector<double>& xs);

Json to_json(const RieszParameter& p);
RieszParameter parameter_from_json(const Json& j);
Json to_json(const ExternalFieldSpec& Q);
ExternalFieldSpec field_from_json(const Json& j);

// {d, s, field, points, energy, delta, ...}
Json configuration_json(const FeketeResult& r, const ExternalFieldSpec& Q, const RieszParameter& p);

struct ConfigurationRecord {
    RieszParameter p;
    ExternalFieldSpec field;
    Configuration config;
    double energy = 0.0;
    double delta = 0.0;
};
// normalize = true re-projects points rounded at 15 digits onto the sphere
ConfigurationRecord configuration_from_json(const Json& j, bool normalize = true);

}  // namespace riesz::io
