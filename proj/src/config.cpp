#include "bohmflow/config.hpp"

#include <fstream>
#include <sstream>

namespace bohmflow {

namespace {

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + v + "' for key '" +
                          key + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value '" + v + "' for key '" +
                          key + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "on") return true;
    if (v == "0" || v == "false" || v == "off") return false;
    throw ConfigError("config: bad boolean value '" + v + "' for key '" + key +
                      "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "scenario.kind") {
        if (value == "no_device") kind = ScenarioKind::NoDevice;
        else if (value == "cavity") kind = ScenarioKind::Cavity;
        else if (value == "overlap_device") kind = ScenarioKind::OverlapDevice;
        else if (value == "detector_d3") kind = ScenarioKind::DetectorD3;
        else if (value == "bubble") kind = ScenarioKind::Bubble;
        else if (value == "density_operator") kind = ScenarioKind::DensityOperator;
        else
            throw ConfigError("config: unknown scenario.kind '" + value + "'");
    } else if (key == "geometry.theta") {
        theta = parse_double(key, value);
        if (!(theta > 0.0) || theta >= kPi / 2)
            throw ConfigError("config: geometry.theta must be in (0, pi/2)");
    } else if (key == "geometry.separation") {
        separation = parse_double(key, value);
        if (!(separation > 0.0))
            throw ConfigError("config: geometry.separation must be > 0");
    } else if (key == "geometry.speed") {
        speed = parse_double(key, value);
        if (!(speed > 0.0))
            throw ConfigError("config: geometry.speed must be > 0");
    } else if (key == "geometry.d1_upper") {
        d1_upper = parse_bool(key, value);
    } else if (key == "device.alpha_re") {
        alpha_re = parse_double(key, value);
    } else if (key == "device.alpha_im") {
        alpha_im = parse_double(key, value);
    } else if (key == "device.n0") {
        n0 = static_cast<int>(parse_int(key, value));
    } else if (key == "device.n1") {
        n1 = static_cast<int>(parse_int(key, value));
    } else if (key == "device.L") {
        box_length = parse_double(key, value);
    } else if (key == "device.sigma") {
        device_sigma = parse_double(key, value);
    } else if (key == "device.dynamic_phase") {
        dynamic_phase = parse_bool(key, value);
    } else if (key == "device.rb0") {
        rb0 = parse_double(key, value);
    } else if (key == "pointer.d") {
        pointer_d = parse_double(key, value);
    } else if (key == "pointer.sigma") {
        pointer_sigma = parse_double(key, value);
    } else if (key == "bubble.d") {
        bubble_d = parse_double(key, value);
    } else if (key == "bubble.sigma") {
        bubble_sigma = parse_double(key, value);
    } else if (key == "ensemble.n") {
        const long long v = parse_int(key, value);
        if (v < 1) throw ConfigError("config: ensemble.n must be >= 1");
        n = static_cast<std::size_t>(v);
    } else if (key == "ensemble.seed") {
        seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "ensemble.sampler") {
        if (value == "auto") sampler = SamplerKind::Auto;
        else if (value == "product") sampler = SamplerKind::BranchProduct;
        else if (value == "rejection") sampler = SamplerKind::Rejection;
        else
            throw ConfigError("config: unknown ensemble.sampler '" + value + "'");
    } else if (key == "ensemble.fan") {
        fan = parse_bool(key, value);
    } else if (key == "ensemble.fan_half_width") {
        fan_half_width = parse_double(key, value);
    } else if (key == "integrator.dt") {
        dt = parse_double(key, value);
        if (dt < 0.0) throw ConfigError("config: integrator.dt must be >= 0");
    } else if (key == "integrator.exclusion_budget") {
        exclusion_budget = parse_double(key, value);
    } else if (key == "time.t_end") {
        t_end = parse_double(key, value);
    } else if (key == "output.dir") {
        out_dir = value;
    } else if (key == "output.figures") {
        figures = parse_bool(key, value);
    } else if (key == "output.grid_nx") {
        grid_nx = static_cast<int>(parse_int(key, value));
    } else if (key == "output.grid_nz") {
        grid_nz = static_cast<int>(parse_int(key, value));
    } else if (key == "output.slice_x") {
        slice_x = parse_double(key, value);
    } else if (key == "output.time") {
        field_time = parse_double(key, value);
    } else if (key == "output.record_stride") {
        record_stride = static_cast<int>(parse_int(key, value));
        if (record_stride < 1)
            throw ConfigError("config: output.record_stride must be >= 1");
    } else if (key == "output.traj_dump_max") {
        traj_dump_max = static_cast<int>(parse_int(key, value));
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

bool RunConfig::is_sweepable(const std::string& key) {
    static const char* numeric_keys[] = {
        "geometry.theta",  "geometry.separation", "geometry.speed",
        "device.alpha_re", "device.alpha_im",     "device.L",
        "device.sigma",    "device.rb0",          "pointer.d",
        "pointer.sigma",   "bubble.d",            "bubble.sigma",
        "integrator.dt",   "time.t_end",
    };
    for (const char* k : numeric_keys)
        if (key == k) return true;
    return false;
}

std::string RunConfig::serialize() const {
    std::ostringstream os;
    os.precision(17);
    os << "scenario.kind = " << scenario_kind_name(kind) << "\n";
    os << "geometry.theta = " << theta << "\n";
    os << "geometry.separation = " << separation << "\n";
    os << "geometry.speed = " << speed << "\n";
    os << "geometry.d1_upper = " << (d1_upper ? 1 : 0) << "\n";
    os << "device.alpha_re = " << alpha_re << "\n";
    os << "device.alpha_im = " << alpha_im << "\n";
    os << "device.n0 = " << n0 << "\n";
    os << "device.n1 = " << n1 << "\n";
    os << "device.L = " << box_length << "\n";
    os << "device.sigma = " << device_sigma << "\n";
    os << "device.dynamic_phase = " << (dynamic_phase ? 1 : 0) << "\n";
    os << "device.rb0 = " << rb0 << "\n";
    os << "pointer.d = " << pointer_d << "\n";
    os << "pointer.sigma = " << pointer_sigma << "\n";
    os << "bubble.d = " << bubble_d << "\n";
    os << "bubble.sigma = " << bubble_sigma << "\n";
    os << "ensemble.n = " << n << "\n";
    os << "ensemble.seed = " << seed << "\n";
    os << "ensemble.sampler = "
       << (sampler == SamplerKind::Auto
               ? "auto"
               : sampler == SamplerKind::BranchProduct ? "product"
                                                       : "rejection")
       << "\n";
    os << "ensemble.fan = " << (fan ? 1 : 0) << "\n";
    os << "ensemble.fan_half_width = " << fan_half_width << "\n";
    os << "integrator.dt = " << dt << "\n";
    os << "integrator.exclusion_budget = " << exclusion_budget << "\n";
    os << "time.t_end = " << t_end << "\n";
    os << "output.dir = " << out_dir << "\n";
    os << "output.figures = " << (figures ? 1 : 0) << "\n";
    os << "output.grid_nx = " << grid_nx << "\n";
    os << "output.grid_nz = " << grid_nz << "\n";
    os << "output.slice_x = " << slice_x << "\n";
    os << "output.time = " << field_time << "\n";
    os << "output.record_stride = " << record_stride << "\n";
    os << "output.traj_dump_max = " << traj_dump_max << "\n";
    return os.str();
}

Geometry RunConfig::geometry() const {
    Geometry g;
    g.theta = theta;
    g.separation = separation;
    g.speed = speed;
    g.d1_upper = d1_upper;
    return g;
}

Scenario RunConfig::build_scenario() const {
    const Geometry g = geometry();
    switch (kind) {
    case ScenarioKind::NoDevice:
        return build_no_device(g);
    case ScenarioKind::Cavity:
        return build_cavity(g, {n0, n1, box_length, 1.0, dynamic_phase});
    case ScenarioKind::OverlapDevice:
        return build_overlap_device(g, {{alpha_re, alpha_im}, device_sigma, 1.0});
    case ScenarioKind::DetectorD3:
        return build_detector_d3(g, {pointer_d, pointer_sigma, 1.0});
    case ScenarioKind::Bubble:
        return build_bubble(g, {bubble_d, bubble_sigma, 1.0});
    case ScenarioKind::DensityOperator:
        return build_density_operator_mode(g);
    }
    throw ConfigError("config: unhandled scenario kind");
}

double RunConfig::resolved_dt() const {
    if (dt > 0.0) return dt;
    const Geometry g = geometry();
    return g.sigma0 * g.atom_mass / (50.0 * g.speed);
}

double RunConfig::resolved_t_end() const {
    if (t_end > 0.0) return t_end;
    return geometry().default_t_end();
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: empty key or value at line " +
                              std::to_string(lineno));
        cfg.set(key, value);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace bohmflow
