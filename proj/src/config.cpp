#include "relax/config.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "relax/models/combustion.hpp"
#include "relax/models/elasticity.hpp"
#include "relax/models/symmetric.hpp"

namespace relax {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(line, "expected a number, got '" + v + "'");
    return x;
}

long parse_int(const std::string& v, int line) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(line, "expected an integer, got '" + v + "'");
    return x;
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) throw ConfigError(line, "empty entry in list");
        out.push_back(parse_double(tok, line));
    }
    if (out.empty()) throw ConfigError(line, "empty list");
    return out;
}

Mode parse_mode(const std::string& v, int line) {
    if (v == "validate") return Mode::validate;
    if (v == "run") return Mode::run;
    if (v == "study") return Mode::study;
    throw ConfigError(line, "unknown mode '" + v + "'");
}

void set_key(RunConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value, int line) {
    auto unknown = [&]() -> ConfigError {
        return ConfigError(line, "unknown key '" + key + "' in section '" +
                                     (section.empty() ? "(top level)" : section) + "'");
    };
    if (section.empty()) {
        if (key == "mode") cfg.mode = parse_mode(value, line);
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value, line));
        else if (key == "samples") cfg.samples = static_cast<int>(parse_int(value, line));
        else if (key == "eps") cfg.eps = parse_double(value, line);
        else if (key == "ic") cfg.ic = value;
        else if (key == "ic_amplitude") cfg.ic_amplitude = parse_double(value, line);
        else if (key == "ic_wavenumber") cfg.ic_wavenumber = static_cast<int>(parse_int(value, line));
        else throw unknown();
    } else if (section == "model") {
        if (key == "name") cfg.model_name = value;
        else if (key == "gamma") cfg.gamma = parse_double(value, line);
        else if (key == "gamma_upper") cfg.Gamma = parse_double(value, line);
        else if (key == "e") cfg.E = parse_double(value, line);
        else if (key == "g2_coeff") cfg.g2_coeff = parse_double(value, line);
        else if (key == "a") cfg.a = parse_double(value, line);
        else if (key == "c") cfg.c = parse_double(value, line);
        else if (key == "k") cfg.K = parse_double(value, line);
        else if (key == "cbar") cfg.Cbar = parse_double(value, line);
        else if (key == "delta") cfg.delta = parse_double(value, line);
        else if (key == "g_coeff") cfg.g_coeff = parse_double(value, line);
        else throw unknown();
    } else if (section == "grid") {
        if (key == "x_lo") cfg.x_lo = parse_double(value, line);
        else if (key == "x_hi") cfg.x_hi = parse_double(value, line);
        else if (key == "cells") cfg.cells = static_cast<int>(parse_int(value, line));
        else throw unknown();
    } else if (section == "time") {
        if (key == "cfl") cfg.cfl = parse_double(value, line);
        else if (key == "t_end") cfg.t_end = parse_double(value, line);
        else if (key == "outputs") cfg.outputs = static_cast<int>(parse_int(value, line));
        else throw unknown();
    } else if (section == "study") {
        if (key == "eps_list") cfg.eps_list = parse_list(value, line);
        else if (key == "floor_grid_factor")
            cfg.floor_grid_factor = static_cast<int>(parse_int(value, line));
        else if (key == "slope_min") cfg.slope_min = parse_double(value, line);
        else throw unknown();
    } else {
        throw ConfigError(line, "unknown section '" + section + "'");
    }
}

void validate_config(const RunConfig& cfg) {
    auto fail = [](const std::string& msg) { throw ConfigError(0, msg); };
    if (cfg.model_name != "elasticity" && cfg.model_name != "combustion" &&
        cfg.model_name != "symmetric")
        fail("model name must be one of elasticity, combustion, symmetric (got '" +
             cfg.model_name + "')");
    if (cfg.cells < 8) fail("cells >= 8");
    if (!(cfg.x_hi > cfg.x_lo)) fail("x_hi > x_lo");
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) fail("cfl in (0, 1]");
    if (!(cfg.t_end > 0.0)) fail("t_end > 0");
    if (cfg.outputs < 1) fail("outputs >= 1");
    if (!(cfg.eps > 0.0)) fail("eps > 0");
    if (cfg.samples < 1) fail("samples >= 1");
    if (cfg.ic != "constant" && cfg.ic != "sine" && cfg.ic != "gaussian-bump")
        fail("ic must be one of constant, sine, gaussian-bump");
    if (cfg.ic_wavenumber < 1) fail("ic_wavenumber >= 1");
    if (cfg.model_name == "combustion" && std::abs(cfg.ic_amplitude) > 1.0)
        fail("|ic_amplitude| <= 1 required for combustion (Z stays in [0,1])");
    if (!cfg.eps_list.empty()) {
        for (double e : cfg.eps_list)
            if (!(e > 0.0)) fail("eps_list entries > 0");
        for (std::size_t i = 0; i + 1 < cfg.eps_list.size(); ++i)
            if (!(cfg.eps_list[i] > cfg.eps_list[i + 1]))
                fail("eps_list strictly decreasing");
    }
    if (cfg.floor_grid_factor < 2) fail("floor_grid_factor >= 2");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(line, "malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "model" && section != "grid" && section != "time" &&
                section != "study")
                throw ConfigError(line, "unknown section '" + section + "'");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "empty key");
        set_key(cfg, section, key, value, line);
    }
    validate_config(cfg);
    return cfg;
}

void apply_override(RunConfig& config, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError(0, "override must be key=value: '" + spec + "'");
    std::string key = trim(spec.substr(0, eq));
    const std::string value = trim(spec.substr(eq + 1));
    std::string section;
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
        section = key.substr(0, dot);
        key = key.substr(dot + 1);
    }
    set_key(config, section, key, value, 0);
    validate_config(config);
}

const char* to_string(Mode mode) {
    switch (mode) {
    case Mode::validate: return "validate";
    case Mode::run: return "run";
    case Mode::study: return "study";
    }
    return "?";
}

ModelDescriptor build_model(const RunConfig& cfg) {
    if (cfg.model_name == "elasticity") {
        ElasticityParams p = ElasticityParams::defaults();
        if (cfg.gamma) p.gamma = *cfg.gamma;
        if (cfg.Gamma) p.Gamma = *cfg.Gamma;
        if (cfg.E) p.E = *cfg.E;
        if (cfg.g2_coeff) {
            const double k = *cfg.g2_coeff;
            p.g2_velocity = [k](double v) { return -k * v; };
        }
        return build_elasticity(p);
    }
    if (cfg.model_name == "combustion") {
        CombustionParams p = CombustionParams::defaults();
        if (cfg.gamma) p.gamma = *cfg.gamma;
        if (cfg.Gamma) p.Gamma = *cfg.Gamma;
        if (cfg.E) p.E = *cfg.E;
        if (cfg.K) p.K = *cfg.K;
        if (cfg.Cbar) p.Cbar = *cfg.Cbar;
        if (cfg.a || cfg.c) {
            const double a = cfg.a.value_or(1.0), c = cfg.c.value_or(0.2);
            const double half_sqrt_pi = 0.5 * std::sqrt(M_PI);
            p.P = [=](double v, double Z) { return -a * v + c * Z * std::exp(-v * v); };
            p.P_v = [=](double v, double Z) {
                return -a - 2.0 * c * Z * v * std::exp(-v * v);
            };
            p.P_Z = [=](double v, double) { return c * std::exp(-v * v); };
            p.P_int = [=](double v, double Z) {
                return -0.5 * a * v * v + c * Z * half_sqrt_pi * std::erf(v);
            };
            p.P_Z_int = [=](double v, double) { return c * half_sqrt_pi * std::erf(v); };
            p.P_ZZ_int = [](double, double) { return 0.0; };
        }
        return build_combustion(p);
    }
    SymmetricParams p = SymmetricParams::defaults();
    if (cfg.gamma) p.gamma = *cfg.gamma;
    if (cfg.Gamma) p.Gamma = *cfg.Gamma;
    if (cfg.E || cfg.delta) {
        const double E = cfg.E.value_or(2.0), d = cfg.delta.value_or(0.05);
        p.E = E;
        p.delta = d;
        p.Efun = [=](const VectorXd& u) {
            double s = 0.5 * E * u.squaredNorm();
            for (int i = 0; i < u.size(); ++i) s += d * std::log(std::cosh(u[i]));
            return s;
        };
        p.Efun_grad = [=](const VectorXd& u) {
            VectorXd g = E * u;
            for (int i = 0; i < u.size(); ++i) g[i] += d * std::tanh(u[i]);
            return g;
        };
        p.Efun_hess = [=](const VectorXd& u) {
            MatrixXd H = MatrixXd::Zero(u.size(), u.size());
            for (int i = 0; i < u.size(); ++i) {
                const double ch = std::cosh(u[i]);
                H(i, i) = E + d / (ch * ch);
            }
            return H;
        };
    }
    if (cfg.g_coeff) {
        const double k = *cfg.g_coeff;
        p.g = [k](const VectorXd& u) { return (-k * u).eval(); };
    }
    return build_symmetric(p);
}

GridSpec make_grid(const RunConfig& cfg) {
    GridSpec g;
    g.x_lo = cfg.x_lo;
    g.x_hi = cfg.x_hi;
    g.cells = cfg.cells;
    return g;
}

std::function<VectorXd(double)> make_ic(const RunConfig& cfg,
                                        const ModelDescriptor& model) {
    const double L = cfg.x_hi - cfg.x_lo;
    const double x_lo = cfg.x_lo, A = cfg.ic_amplitude;
    const int k = cfg.ic_wavenumber;
    std::function<double(double)> profile;
    if (cfg.ic == "constant") {
        profile = [](double) { return 1.0; };
    } else if (cfg.ic == "sine") {
        profile = [=](double x) {
            return std::sin(2.0 * M_PI * k * (x - x_lo) / L);
        };
    } else if (cfg.ic == "gaussian-bump") {
        const double xc = x_lo + 0.5 * L, w = 0.1 * L;
        profile = [=](double x) {
            const double r = (x - xc) / w;
            return std::exp(-r * r);
        };
    } else {
        throw ConfigError(0, "unknown ic preset '" + cfg.ic + "'");
    }

    const int n = model.n;
    const bool combustion_like = model.name == "combustion";
    return [=](double x) {
        VectorXd u = VectorXd::Zero(n);
        u[0] = A * profile(x);
        if (combustion_like) u[2] = 0.5 + 0.5 * A * profile(x);
        return u;
    };
}

} // namespace relax
