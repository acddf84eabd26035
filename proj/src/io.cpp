#include "abphase/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "abphase/gauges.hpp"

namespace abphase {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

FullConfig parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    FullConfig c;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw ConfigError("config key '" + key + "' must be a number");
        const double v = value.get<double>();
        if (key == "L") c.setup.L = v;
        else if (key == "T") c.setup.T = v;
        else if (key == "v") c.setup.v = v;
        else if (key == "R_tor") c.setup.R_tor = v;
        else if (key == "eps_x") c.reg.eps_x = v;
        else if (key == "eps_y") c.reg.eps_y = v;
        else if (key == "eps_t") c.reg.eps_t = v;
        else if (key == "core_radius") c.reg.core_radius = v;
        else throw ConfigError("unknown config key '" + key + "'");
    }
    validate_config(c.setup, c.reg);
    return c;
}

FullConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void write_config(std::ostream& os, const FullConfig& config) {
    nlohmann::json j;
    j["L"] = config.setup.L;
    j["T"] = config.setup.T;
    j["v"] = config.setup.v;
    j["R_tor"] = config.setup.R_tor;
    j["eps_x"] = config.reg.eps_x;
    j["eps_y"] = config.reg.eps_y;
    j["eps_t"] = config.reg.eps_t;
    j["core_radius"] = config.reg.core_radius;
    os << j.dump(2) << "\n";
}

PolyPath parse_path(std::istream& is) {
    std::vector<SpacetimePoint> vertices;
    bool closed = false;
    std::string line;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        std::string token;
        ls >> token;
        if (token == "closed") {
            closed = true;
            continue;
        }
        SpacetimePoint p;
        std::istringstream vs(line);
        if (!(vs >> p.t >> p.x >> p.y)) throw GeometryError("bad path line: " + line);
        vertices.push_back(p);
    }
    if (closed && !vertices.empty()) {
        const auto& f = vertices.front();
        const auto& b = vertices.back();
        if (f.t != b.t || f.x != b.x || f.y != b.y) vertices.push_back(f);
    }
    return PolyPath::make(std::move(vertices), closed);
}

PolyPath load_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open path file: " + path);
    return parse_path(in);
}

void write_path(std::ostream& os, const PolyPath& path) {
    for (const auto& v : path.vertices)
        os << format_double(v.t) << " " << format_double(v.x) << " " << format_double(v.y)
           << "\n";
    if (path.closed) os << "closed\n";
}

void write_profile_csv(std::ostream& os, double L, const std::vector<double>& x_columns,
                       double y_min, double y_max, int samples) {
    if (samples < 2) throw ConfigError("profile emission needs samples >= 2");
    if (!(y_max > y_min)) throw ConfigError("profile emission needs y_max > y_min");
    os << "x,y,F\n";
    for (double x : x_columns) {
        for (int i = 0; i < samples; ++i) {
            const double y = y_min + (y_max - y_min) * i / (samples - 1);
            if (y == 0.0) {
                os << format_double(x) << "," << format_double(y) << ","
                   << format_double(gauge_profile(x, 0.0, L, CutSide::Below)) << "\n";
                os << format_double(x) << "," << format_double(y) << ","
                   << format_double(gauge_profile(x, 0.0, L, CutSide::Above)) << "\n";
            } else {
                os << format_double(x) << "," << format_double(y) << ","
                   << format_double(gauge_profile(x, y, L)) << "\n";
            }
        }
    }
}

}  // namespace abphase
