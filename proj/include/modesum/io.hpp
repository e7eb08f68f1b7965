#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "modesum/planar.hpp"

namespace modesum::io {

// shortest decimal representation that round-trips to the same double
std::string format_double(double v);

using Cell = std::variant<std::string, double, long>;

// Writes rows either as CSV with one fixed header line or as JSON lines
// mirroring the columns field-for-field.
class TableWriter {
  public:
    TableWriter(std::ostream& os, std::string format,
                std::vector<std::string> columns);
    void row(const std::vector<Cell>& cells);

  private:
    std::ostream& os_;
    bool jsonl_;
    std::vector<std::string> columns_;
};

// Material block:
//   {"type": "drude_lorentz"|"discrete_bath"|"perfect"|"vacuum"|"ohmic_bath",
//    ... model fields ...}
// Frequencies are in units of the declared reference wavenumber.
DielectricModel parse_material(const nlohmann::json& j);

// Geometry block: {"gap": L, "slab_thickness": d|null,
//                  "temperature_wavenumber": tau}
PlanarCavity parse_cavity(const nlohmann::json& geometry,
                          DielectricModel mirror);

Channel parse_channel(const nlohmann::json& j);

} // namespace modesum::io
