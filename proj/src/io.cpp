#include "modesum/io.hpp"

#include <charconv>
#include <ostream>

namespace modesum::io {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

TableWriter::TableWriter(std::ostream& os, std::string format,
                         std::vector<std::string> columns)
    : os_(os), jsonl_(format == "jsonl"), columns_(std::move(columns)) {
    if (format != "csv" && format != "jsonl")
        throw ConfigError("output format must be csv or jsonl");
    if (!jsonl_) {
        for (size_t i = 0; i < columns_.size(); ++i)
            os_ << (i ? "," : "") << columns_[i];
        os_ << "\n";
    }
}

void TableWriter::row(const std::vector<Cell>& cells) {
    if (cells.size() != columns_.size())
        throw ConfigError("row does not match the declared column header");
    if (jsonl_) {
        nlohmann::json j;
        for (size_t i = 0; i < cells.size(); ++i) {
            const Cell& c = cells[i];
            if (std::holds_alternative<double>(c))
                j[columns_[i]] = std::get<double>(c);
            else if (std::holds_alternative<long>(c))
                j[columns_[i]] = std::get<long>(c);
            else
                j[columns_[i]] = std::get<std::string>(c);
        }
        os_ << j.dump() << "\n";
        return;
    }
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ",";
        const Cell& c = cells[i];
        if (std::holds_alternative<double>(c))
            os_ << format_double(std::get<double>(c));
        else if (std::holds_alternative<long>(c))
            os_ << std::get<long>(c);
        else
            os_ << std::get<std::string>(c);
    }
    os_ << "\n";
}

DielectricModel parse_material(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "vacuum") return Vacuum{};
    if (type == "perfect") return PerfectMirror{};
    if (type == "drude_lorentz") {
        DrudeLorentz m;
        m.omega_p = j.at("omega_p").get<double>();
        m.omega_0 = j.value("omega_0", 0.0);
        m.gamma = j.value("gamma", 0.0);
        if (!(m.omega_p > 0.0)) throw ConfigError("drude_lorentz: omega_p > 0");
        if (m.gamma < 0.0 || m.omega_0 < 0.0)
            throw ConfigError("drude_lorentz: gamma, omega_0 >= 0");
        return m;
    }
    if (type == "discrete_bath") {
        DiscreteBath m;
        m.omega_p = j.at("omega_p").get<double>();
        m.omega_0 = j.value("omega_0", 0.0);
        double prev = 0.0;
        for (const auto& c : j.value("couplings", nlohmann::json::array())) {
            const double w = c.at(0).get<double>();
            const double r = c.at(1).get<double>();
            if (!(w > prev))
                throw ConfigError("discrete_bath: omega_j strictly increasing");
            if (!(r > 0.0)) throw ConfigError("discrete_bath: mass_ratio > 0");
            m.couplings.push_back({w, r});
            prev = w;
        }
        return m;
    }
    if (type == "ohmic_bath") {
        const auto grid = j.value("grid", std::string("linear"));
        return make_ohmic_bath(
            j.at("omega_p").get<double>(), j.value("omega_0", 0.0),
            j.at("gamma").get<double>(), j.at("omega_c").get<double>(),
            j.at("n").get<int>(),
            grid == "log" ? BathGrid::log : BathGrid::linear,
            j.value("omega_min", 1e-3));
    }
    throw ConfigError("unknown material type: " + type);
}

PlanarCavity parse_cavity(const nlohmann::json& geometry,
                          DielectricModel mirror) {
    PlanarCavity cav{1.0, std::nullopt, std::move(mirror), 0.0};
    cav.gap = geometry.at("gap").get<double>();
    if (!(cav.gap > 0.0)) throw ConfigError("geometry: gap > 0 required");
    if (geometry.contains("slab_thickness") &&
        !geometry.at("slab_thickness").is_null()) {
        cav.slab_thickness = geometry.at("slab_thickness").get<double>();
        if (!(*cav.slab_thickness > 0.0))
            throw ConfigError("geometry: slab_thickness > 0 or null");
    }
    cav.temperature_wavenumber = geometry.value("temperature_wavenumber", 0.0);
    if (cav.temperature_wavenumber < 0.0)
        throw ConfigError("geometry: temperature_wavenumber >= 0");
    return cav;
}

Channel parse_channel(const nlohmann::json& j) {
    const std::string pol = j.at("polarization").get<std::string>();
    if (pol != "TE" && pol != "TM")
        throw ConfigError("channel: polarization must be TE or TM");
    const double k = j.at("k").get<double>();
    if (k < 0.0) throw ConfigError("channel: k >= 0");
    return {pol == "TE" ? Polarization::TE : Polarization::TM, k};
}

} // namespace modesum::io
