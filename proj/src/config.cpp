#include "vp1d/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "vp1d/errors.hpp"

namespace vp1d {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
    std::ostringstream os;
    os << name << ":" << line << ": " << what;
    throw config_error(os.str());
}

double parse_double(const std::string& v, const std::string& name, int line,
                    const std::string& key) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size())
            fail(name, line, "trailing characters in value for '" + key + "'");
        return d;
    } catch (const config_error&) {
        throw;
    } catch (...) {
        fail(name, line, "bad numeric value for '" + key + "': " + v);
    }
}

long parse_int(const std::string& v, const std::string& name, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size())
            fail(name, line, "trailing characters in value for '" + key + "'");
        return d;
    } catch (const config_error&) {
        throw;
    } catch (...) {
        fail(name, line, "bad integer value for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& v, const std::string& name, int line, const std::string& key) {
    if (v == "true" || v == "yes" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "0")
        return false;
    fail(name, line, "bad boolean value for '" + key + "': " + v);
}

} // namespace

RunConfig RunConfig::parse_stream(std::istream& in, const std::string& name) {
    RunConfig cfg;
    std::string section;
    std::string line;
    int lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail(name, lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "species.f" && section != "species.g")
                fail(name, lineno, "unknown section '" + section + "'");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(name, lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            fail(name, lineno, "empty key");
        if (val.empty())
            fail(name, lineno, "empty value for '" + key + "'");

        if (section == "species.f" || section == "species.g") {
            BumpParams& b = (section == "species.f") ? cfg.bump_f : cfg.bump_g;
            if (key == "x_center")
                b.x_center = parse_double(val, name, lineno, key);
            else if (key == "x_halfwidth")
                b.x_halfwidth = parse_double(val, name, lineno, key);
            else if (key == "v_center")
                b.v_center = parse_double(val, name, lineno, key);
            else if (key == "v_halfwidth")
                b.v_halfwidth = parse_double(val, name, lineno, key);
            else if (key == "amplitude")
                b.amplitude = parse_double(val, name, lineno, key);
            else
                fail(name, lineno, "unknown key '" + key + "' in [" + section + "]");
            continue;
        }

        if (key == "model") {
            if (val == "classical")
                cfg.model = ModelKind::classical;
            else if (val == "relativistic")
                cfg.model = ModelKind::relativistic;
            else
                fail(name, lineno, "model must be 'classical' or 'relativistic'");
        } else if (key == "mass_g") {
            cfg.mass_g = parse_double(val, name, lineno, key);
        } else if (key == "x_min") {
            cfg.grid.x_min = parse_double(val, name, lineno, key);
        } else if (key == "x_max") {
            cfg.grid.x_max = parse_double(val, name, lineno, key);
        } else if (key == "n_x") {
            cfg.grid.n_x = static_cast<int>(parse_int(val, name, lineno, key));
        } else if (key == "v_max") {
            cfg.grid.v_max = parse_double(val, name, lineno, key);
        } else if (key == "n_v") {
            cfg.grid.n_v = static_cast<int>(parse_int(val, name, lineno, key));
        } else if (key == "dt") {
            cfg.dt = parse_double(val, name, lineno, key);
        } else if (key == "cfl") {
            cfg.cfl = parse_double(val, name, lineno, key);
        } else if (key == "t_final") {
            cfg.t_final = parse_double(val, name, lineno, key);
        } else if (key == "interpolation") {
            if (val == "linear")
                cfg.interpolation = Interpolation::linear;
            else if (val == "cubic-clipped")
                cfg.interpolation = Interpolation::cubic_clipped;
            else
                fail(name, lineno, "interpolation must be 'linear' or 'cubic-clipped'");
        } else if (key == "renormalize") {
            cfg.renormalize = parse_bool(val, name, lineno, key);
        } else if (key == "support_tol") {
            cfg.support_tol = parse_double(val, name, lineno, key);
        } else if (key == "cadence") {
            cfg.cadence = static_cast<int>(parse_int(val, name, lineno, key));
        } else if (key == "local_charge_radius") {
            cfg.local_charge_radius = parse_double(val, name, lineno, key);
        } else if (key == "snapshot_every") {
            cfg.snapshot_every = static_cast<int>(parse_int(val, name, lineno, key));
        } else if (key == "output_dir") {
            cfg.output_dir = val;
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(val, name, lineno, key));
        } else if (key == "oracle_particles") {
            cfg.oracle_particles = static_cast<int>(parse_int(val, name, lineno, key));
        } else if (key == "compare_t_final") {
            cfg.compare_t_final = parse_double(val, name, lineno, key);
        } else if (key == "compare_cadence") {
            cfg.compare_cadence = static_cast<int>(parse_int(val, name, lineno, key));
        } else if (key == "compare_tol_Q") {
            cfg.compare_tol_Q = parse_double(val, name, lineno, key);
        } else if (key == "compare_tol_F") {
            cfg.compare_tol_F = parse_double(val, name, lineno, key);
        } else if (key == "compare_tol_G") {
            cfg.compare_tol_G = parse_double(val, name, lineno, key);
        } else if (key == "compare_tol_E") {
            cfg.compare_tol_E = parse_double(val, name, lineno, key);
        } else {
            fail(name, lineno, "unknown key '" + key + "'");
        }
    }

    cfg.validate();
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file: " + path);
    return parse_stream(in, path);
}

void RunConfig::validate() const {
    grid.validate();
    if (!(mass_g > 0.0))
        throw config_error("mass_g must be positive");
    if (dt < 0.0)
        throw config_error("dt must be positive (or omitted for cfl-derived)");
    if (dt == 0.0 && !(cfl > 0.0 && cfl <= 1.0))
        throw config_error("cfl must lie in (0, 1]");
    if (t_final < 0.0)
        throw config_error("t_final must be nonnegative");
    if (!(support_tol > 0.0 && support_tol < 1.0))
        throw config_error("support_tol must lie in (0, 1)");
    if (cadence < 1)
        throw config_error("cadence must be at least 1");
    if (!(local_charge_radius > 0.0))
        throw config_error("local_charge_radius must be positive");
    if (snapshot_every < 0)
        throw config_error("snapshot_every must be nonnegative");
    if (output_dir.empty())
        throw config_error("output_dir must not be empty");
    if (oracle_particles < 0)
        throw config_error("oracle_particles must be nonnegative");
    if (!(compare_t_final > 0.0))
        throw config_error("compare_t_final must be positive");
    if (compare_cadence < 1)
        throw config_error("compare_cadence must be at least 1");
    if (!(compare_tol_Q > 0.0) || !(compare_tol_F > 0.0) || !(compare_tol_G > 0.0) ||
        !(compare_tol_E > 0.0))
        throw config_error("compare tolerances must be positive");
}

double RunConfig::effective_dt() const {
    if (dt > 0.0)
        return dt;
    // Accuracy-targeted default: the scheme is unconditionally stable, so
    // this only limits per-substep shifts. Masses follow from the closed
    // form of the bump profile; E is bounded by half the total mass.
    const double mass_f = bump_f.amplitude * bump_f.x_halfwidth * bump_f.v_halfwidth;
    const double e_bound = std::max(mass_f, 1e-300);
    double u_max = 1.0;
    if (model == ModelKind::classical)
        u_max = std::max(grid.v_max, grid.v_max / mass_g);
    return cfl * std::min(grid.dx() / u_max, grid.dv() / e_bound);
}

} // namespace vp1d
