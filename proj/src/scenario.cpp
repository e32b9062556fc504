#include "degen/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "degen/diagnostics.hpp"

namespace degen {

namespace {

struct ConfigEntry {
    std::string value;
    int line;
    mutable bool used = false;
};

using ConfigMap = std::map<std::string, ConfigEntry>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

ConfigMap read_kv(std::istream& in) {
    ConfigMap out;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": malformed section header '" + t + "'");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": expected 'key = value', got '" + t + "'");
        const std::string key =
            (section.empty() ? "" : section + ".") + trim(t.substr(0, eq));
        out[key] = ConfigEntry{trim(t.substr(eq + 1)), lineno};
    }
    return out;
}

double parse_real(const ConfigMap& m, const std::string& key, double fallback,
                  bool* found = nullptr) {
    auto it = m.find(key);
    if (it == m.end()) {
        if (found) *found = false;
        return fallback;
    }
    it->second.used = true;
    if (found) *found = true;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second.value, &pos);
        if (pos != it->second.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("key '" + key + "' (line " +
                                 std::to_string(it->second.line) +
                                 "): not a real number: '" + it->second.value + "'");
    }
}

long parse_int(const ConfigMap& m, const std::string& key, long fallback) {
    auto it = m.find(key);
    if (it == m.end()) return fallback;
    it->second.used = true;
    try {
        std::size_t pos = 0;
        const long v = std::stol(it->second.value, &pos);
        if (pos != it->second.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("key '" + key + "' (line " +
                                 std::to_string(it->second.line) +
                                 "): not an integer: '" + it->second.value + "'");
    }
}

std::string parse_text(const ConfigMap& m, const std::string& key,
                       const std::string& fallback) {
    auto it = m.find(key);
    if (it == m.end()) return fallback;
    it->second.used = true;
    return it->second.value;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Scenario scenario_from_map(const ConfigMap& m) {
    Scenario s;
    s.name = parse_text(m, "scenario.name", s.name);
    s.output_dir = parse_text(m, "scenario.output_dir", s.output_dir);
    s.diagnostics = split_list(parse_text(
        m, "scenario.diagnostics", "deviation_sup,energy_G,phi_l2,dissipation"));

    SolverConfig& c = s.solver_config;
    c.p = parse_real(m, "solver.p", 2.0);
    c.mu = parse_real(m, "solver.mu", 1.0);
    c.epsilon = parse_real(m, "solver.epsilon", 1e-6);
    c.u_minus = parse_real(m, "solver.u_minus", -1.0);
    c.u_plus = parse_real(m, "solver.u_plus", 1.0);
    c.cfl_advective = parse_real(m, "solver.cfl_advective", 0.4);
    c.cfl_diffusive = parse_real(m, "solver.cfl_diffusive", 0.4);
    c.dt_max = parse_real(m, "solver.dt_max", 0.01);
    c.t_end = parse_real(m, "solver.t_end", 100.0);
    c.flux = builtin_degenerate_burgers();

    const std::string cps = parse_text(m, "solver.checkpoints", "");
    if (cps.empty()) {
        for (double tc : {5.0, 10.0, 20.0, 50.0, 100.0})
            if (tc <= c.t_end) c.checkpoint_times.push_back(tc);
    } else {
        for (const std::string& tok : split_list(cps)) {
            try {
                c.checkpoint_times.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw std::runtime_error("key 'solver.checkpoints': not a real number: '" +
                                         tok + "'");
            }
        }
    }

    s.grid.x_left = parse_real(m, "grid.x_left", -40.0);
    s.grid.x_right = parse_real(m, "grid.x_right", 110.0);
    s.grid.n = static_cast<int>(parse_int(m, "grid.n", 3000));

    const std::string kind = parse_text(m, "perturbation.kind", "none");
    if (kind == "gaussian") {
        s.perturbation.kind = PerturbationSpec::Kind::gaussian;
        s.perturbation.amplitude = parse_real(m, "perturbation.amplitude", 0.0);
        s.perturbation.center = parse_real(m, "perturbation.center", 0.0);
        s.perturbation.width = parse_real(m, "perturbation.width", 1.0);
    } else if (kind != "none") {
        throw std::runtime_error("key 'perturbation.kind': unknown kind '" + kind + "'");
    }

    for (const auto& [key, entry] : m)
        if (!entry.used)
            throw std::runtime_error("key '" + key + "' (line " +
                                     std::to_string(entry.line) + "): unknown key");
    return s;
}

void write_text(const std::string& path, const std::string& body) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fwrite(body.data(), 1, body.size(), f);
    std::fclose(f);
}

unsigned long long fnv1a(const std::string& s) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

void validate_scenario(const Scenario& s) {
    const SolverConfig& c = s.solver_config;
    if (!(c.p > 1.0)) throw std::invalid_argument("solver.p: p must exceed 1");
    if (!(c.mu > 0.0)) throw std::invalid_argument("solver.mu: mu must be > 0");
    if (!(c.epsilon >= 0.0))
        throw std::invalid_argument("solver.epsilon: epsilon must be >= 0");
    if (!(c.u_minus <= 0.0 && 0.0 <= c.u_plus && c.u_minus < c.u_plus))
        throw std::invalid_argument(
            "solver.u_minus/u_plus: requires u_minus <= 0 <= u_plus, u_minus < u_plus");
    if (!(s.grid.x_left < s.grid.x_right))
        throw std::invalid_argument("grid.x_left: x_left must be < x_right");
    if (s.grid.n < 8) throw std::invalid_argument("grid.n: n must be >= 8");
    if (!(c.t_end >= 0.0)) throw std::invalid_argument("solver.t_end: t_end must be >= 0");
    for (double tc : c.checkpoint_times)
        if (!(tc >= 0.0 && tc <= c.t_end))
            throw std::invalid_argument(
                "solver.checkpoints: checkpoint outside [0, t_end]");
    if (!std::is_sorted(c.checkpoint_times.begin(), c.checkpoint_times.end()))
        throw std::invalid_argument("solver.checkpoints: must be ascending");

    // Boundary-margin rule: the contact support and the rarefaction fan must
    // stay at least 5 units from both boundaries through t_end.
    const CompositeWave w = scenario_wave(s);
    const double hw = support_halfwidth(w.contact, c.t_end);
    const double right_extent =
        std::max(hw, w.rarefaction.lambda_plus * c.t_end);
    const double left_extent =
        std::min(-hw, w.rarefaction.lambda_minus * c.t_end);
    if (s.grid.x_left > left_extent - 5.0 || s.grid.x_right < right_extent + 5.0)
        throw std::invalid_argument(
            "grid.x_left/x_right: boundaries must stay >= 5 units from the wave "
            "supports through t_end (need [" + std::to_string(left_extent - 5.0) +
            ", " + std::to_string(right_extent + 5.0) + "])");
}

Scenario parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config file not found: " + path);
    Scenario s = scenario_from_map(read_kv(in));
    validate_scenario(s);
    return s;
}

std::string serialize_config(const Scenario& s) {
    std::ostringstream out;
    char buf[64];
    auto real = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "[scenario]\n";
    out << "name = " << s.name << "\n";
    out << "output_dir = " << s.output_dir << "\n";
    out << "diagnostics = ";
    for (std::size_t i = 0; i < s.diagnostics.size(); ++i)
        out << (i ? ", " : "") << s.diagnostics[i];
    out << "\n\n[solver]\n";
    const SolverConfig& c = s.solver_config;
    out << "p = " << real(c.p) << "\nmu = " << real(c.mu)
        << "\nepsilon = " << real(c.epsilon) << "\nu_minus = " << real(c.u_minus)
        << "\nu_plus = " << real(c.u_plus)
        << "\ncfl_advective = " << real(c.cfl_advective)
        << "\ncfl_diffusive = " << real(c.cfl_diffusive)
        << "\ndt_max = " << real(c.dt_max) << "\nt_end = " << real(c.t_end)
        << "\ncheckpoints = ";
    for (std::size_t i = 0; i < c.checkpoint_times.size(); ++i)
        out << (i ? ", " : "") << real(c.checkpoint_times[i]);
    out << "\n\n[grid]\n";
    out << "x_left = " << real(s.grid.x_left)
        << "\nx_right = " << real(s.grid.x_right) << "\nn = " << s.grid.n << "\n";
    if (s.perturbation.kind == PerturbationSpec::Kind::gaussian) {
        out << "\n[perturbation]\nkind = gaussian\namplitude = "
            << real(s.perturbation.amplitude)
            << "\ncenter = " << real(s.perturbation.center)
            << "\nwidth = " << real(s.perturbation.width) << "\n";
    }
    return out.str();
}

bool scenario_equal(const Scenario& a, const Scenario& b) {
    return serialize_config(a) == serialize_config(b);
}

CompositeWave scenario_wave(const Scenario& s) {
    const SolverConfig& c = s.solver_config;
    return make_composite(c.p, c.mu, c.u_minus, c.u_plus, c.flux);
}

Field scenario_initial_field(const Scenario& s, const CompositeWave& c) {
    if (s.perturbation.kind == PerturbationSpec::Kind::none)
        return init_from_wave(s.grid, c, nullptr);
    Field pert{s.grid, std::vector<double>(s.grid.nodes())};
    for (int i = 0; i < s.grid.nodes(); ++i) {
        const double z = (s.grid.x(i) - s.perturbation.center) / s.perturbation.width;
        pert.values[i] = s.perturbation.amplitude * std::exp(-z * z);
    }
    return init_from_wave(s.grid, c, &pert);
}

void cmd_profile(const Scenario& s, const std::vector<double>& times) {
    validate_scenario(s);
    std::filesystem::create_directories(s.output_dir);
    const CompositeWave w = scenario_wave(s);
    char num[64];
    for (double t : times) {
        std::snprintf(num, sizeof num, "%g", t);
        const std::string path =
            s.output_dir + "/profile_t" + num + ".csv";
        std::ostringstream body;
        body << "t,x,u_multi,u_contact,u_rarefaction,du_multi\n";
        char row[256];
        for (int i = 0; i < s.grid.nodes(); ++i) {
            const double x = s.grid.x(i);
            std::snprintf(row, sizeof row, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          t, x, composite_eval(w, t, x), contact_u(w.contact, t, x),
                          smooth_rarefaction_eval(w.rarefaction, t, x),
                          composite_dux(w, t, x));
            body << row;
        }
        write_text(path, body.str());
    }
}

int cmd_simulate(const Scenario& s) {
    validate_scenario(s);
    std::filesystem::create_directories(s.output_dir);
    const CompositeWave w = scenario_wave(s);
    const Field u0 = scenario_initial_field(s, w);
    const SolverConfig& cfg = s.solver_config;

    std::map<std::string, TimeSeries> series;
    auto wants = [&s](const std::string& d) {
        return std::find(s.diagnostics.begin(), s.diagnostics.end(), d) !=
               s.diagnostics.end();
    };

    Observer observer = [&](double t, const Field& f) {
        char num[64], row[256];
        std::snprintf(num, sizeof num, "%g", t);
        std::ostringstream body;
        body << "t,x,u,u_multi,phi\n";
        std::vector<double> phi(f.values.size());
        for (int i = 0; i < f.grid.nodes(); ++i) {
            const double x = f.grid.x(i);
            const double um = composite_eval(w, t, x);
            phi[i] = f.values[i] - um;
            std::snprintf(row, sizeof row, "%.17g,%.17g,%.17g,%.17g,%.17g\n", t, x,
                          f.values[i], um, phi[i]);
            body << row;
        }
        write_text(s.output_dir + "/checkpoint_t" + num + ".csv", body.str());

        const double dx = f.grid.dx();
        if (wants("deviation_sup"))
            series["deviation_sup"].push(t, grid_lq_norm(phi, dx,
                std::numeric_limits<double>::infinity()));
        if (wants("energy_G")) series["energy_G"].push(t, energy_G(f, w, t));
        if (wants("phi_l2")) series["phi_l2"].push(t, grid_lq_norm(phi, dx, 2.0));
        if (wants("dissipation")) {
            std::vector<double> du(f.values.size());
            du[0] = (f.values[1] - f.values[0]) / dx;
            for (std::size_t i = 1; i + 1 < f.values.size(); ++i)
                du[i] = (f.values[i + 1] - f.values[i - 1]) / (2.0 * dx);
            du.back() = (f.values[f.values.size() - 1] - f.values[f.values.size() - 2]) / dx;
            series["dissipation"].push(t, grid_lq_norm(du, dx, cfg.p + 1.0));
        }
    };

    const std::string cfg_text = serialize_config(s);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", fnv1a(cfg_text));
    std::string status = "ok";
    std::string failure;
    double failure_time = -1.0;
    int exit_code = 0;
    try {
        run(cfg, s.grid, u0, {observer});
    } catch (const std::exception& e) {
        status = "failed";
        failure = e.what();
        failure_time = series.count("deviation_sup") &&
                               !series["deviation_sup"].entries.empty()
                           ? series["deviation_sup"].entries.back().t
                           : 0.0;
        exit_code = 1;
    }

    std::ostringstream diag;
    diag << "t,value,series_name\n";
    char row[256];
    for (const auto& [nm, ts] : series)
        for (const auto& e : ts.entries) {
            std::snprintf(row, sizeof row, "%.17g,%.17g,%s\n", e.t, e.value,
                          nm.c_str());
            diag << row;
        }
    write_text(s.output_dir + "/diagnostics.csv", diag.str());

    std::ostringstream manifest;
    manifest << "scenario = " << s.name << "\n"
             << "scenario_hash = " << hash << "\n"
             << "version = 1.0.0\n"
             << "status = " << status << "\n";
    if (exit_code != 0)
        manifest << "failure = " << failure << "\n"
                 << "last_checkpoint_time = " << failure_time << "\n";
    write_text(s.output_dir + "/MANIFEST", manifest.str());
    return exit_code;
}

}  // namespace degen
