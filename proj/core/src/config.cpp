#include "potrec/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace potrec {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "': expected a number, got '" + s + "'");
    }
}

long long to_integer(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "': expected an integer, got '" + s + "'");
    }
}

bool to_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
    if (s == "false" || s == "no" || s == "0" || s == "off") return false;
    throw ConfigError("'" + key + "': expected true or false, got '" + s + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split(s, ',')) out.push_back(to_double(key, item));
    return out;
}

std::vector<int> to_ints(const std::string& key, const std::string& s) {
    std::vector<int> out;
    for (const auto& item : split(s, ',')) out.push_back(static_cast<int>(to_integer(key, item)));
    return out;
}

Vec2 to_vec2(const std::string& key, const std::string& s) {
    const auto v = to_doubles(key, s);
    if (v.size() != 2) throw ConfigError("'" + key + "': expected two comma-separated numbers");
    return {v[0], v[1]};
}

// "A x y s; A x y s; ..."
GaussianMixture to_mixture(const std::string& key, const std::string& s) {
    GaussianMixture m;
    for (const auto& bump : split(s, ';')) {
        std::vector<double> v;
        std::istringstream in(bump);
        std::string tok;
        while (in >> tok) v.push_back(to_double(key, tok));
        if (v.size() != 4) throw ConfigError("'" + key + "': each Gaussian needs 'amplitude x y width'");
        if (!(v[3] > 0.0)) throw ConfigError("'" + key + "': Gaussian width must be positive");
        m.bumps.push_back({v[0], {v[1], v[2]}, v[3]});
    }
    return m;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, std::map<std::string, Setter>>& grammar() {
    static const std::map<std::string, std::map<std::string, Setter>> g = {
        {"domain",
         {
             {"half_width", [](auto& c, auto& k, auto& v) { c.domain.half_width = to_double(k, v); }},
             {"radius", [](auto& c, auto& k, auto& v) { c.domain.radius = to_double(k, v); }},
             {"n_forward", [](auto& c, auto& k, auto& v) { c.domain.n_forward = static_cast<int>(to_integer(k, v)); }},
             {"n_inversion",
              [](auto& c, auto& k, auto& v) { c.domain.n_inversion = static_cast<int>(to_integer(k, v)); }},
             {"n_boundary",
              [](auto& c, auto& k, auto& v) { c.domain.n_boundary = static_cast<int>(to_integer(k, v)); }},
         }},
        {"plan",
         {
             {"n_lines", [](auto& c, auto& k, auto& v) { c.plan.n_lines = static_cast<int>(to_integer(k, v)); }},
             {"kappa_min", [](auto& c, auto& k, auto& v) { c.plan.kappa_min = to_double(k, v); }},
             {"kappa_max", [](auto& c, auto& k, auto& v) { c.plan.kappa_max = to_double(k, v); }},
             {"d_kappa", [](auto& c, auto& k, auto& v) { c.plan.d_kappa = to_double(k, v); }},
             {"lines", [](auto& c, auto& k, auto& v) { c.plan.lines = to_ints(k, v); }},
             {"line_count", [](auto& c, auto& k, auto& v) { c.plan.line_count = static_cast<int>(to_integer(k, v)); }},
         }},
        {"physics",
         {
             {"k", [](auto& c, auto& k, auto& v) { c.physics.k_list = to_doubles(k, v); }},
             {"b", [](auto& c, auto& k, auto& v) { c.physics.b = to_double(k, v); }},
             {"m", [](auto& c, auto& k, auto& v) { c.physics.m_list = to_doubles(k, v); }},
             {"b_list", [](auto& c, auto& k, auto& v) { c.physics.b_list = to_doubles(k, v); }},
         }},
        {"potential",
         {
             {"preset", [](auto& c, auto&, auto& v) { c.potential.preset = v; }},
             {"gaussians", [](auto& c, auto& k, auto& v) { c.potential.custom = to_mixture(k, v); }},
             {"c_max", [](auto& c, auto& k, auto& v) { c.potential.c_max = to_double(k, v); }},
             {"m1", [](auto& c, auto& k, auto& v) { c.potential.m1 = to_double(k, v); }},
         }},
        {"measurement",
         {
             {"mode", [](auto& c, auto&, auto& v) { c.measurement.mode = parse_provenance(v); }},
             {"reference", [](auto& c, auto&, auto& v) { c.measurement.reference = parse_reference(v); }},
             {"noise", [](auto& c, auto& k, auto& v) { c.measurement.noise = to_double(k, v); }},
             {"seed",
              [](auto& c, auto& k, auto& v) {
                  const long long s = to_integer(k, v);
                  if (s < 0) throw ConfigError("'seed' must be nonnegative");
                  c.measurement.seed = static_cast<std::uint64_t>(s);
              }},
         }},
        {"forward",
         {
             {"kappa", [](auto& c, auto& k, auto& v) { c.forward.kappa = to_double(k, v); }},
             {"direction", [](auto& c, auto& k, auto& v) { c.forward.direction = to_vec2(k, v); }},
         }},
        {"bounds",
         {
             {"n", [](auto& c, auto& k, auto& v) { c.bounds.params.n = static_cast<int>(to_integer(k, v)); }},
             {"eps", [](auto& c, auto& k, auto& v) { c.bounds.params.eps = to_double(k, v); }},
             {"M1", [](auto& c, auto& k, auto& v) { c.bounds.params.M1 = to_double(k, v); }},
             {"D", [](auto& c, auto& k, auto& v) { c.bounds.params.D = to_double(k, v); }},
             {"C_omega", [](auto& c, auto& k, auto& v) { c.bounds.params.C_omega = to_double(k, v); }},
             {"b", [](auto& c, auto& k, auto& v) { c.bounds.params.b = to_double(k, v); }},
             {"vol_n", [](auto& c, auto& k, auto& v) { c.bounds.params.vol_n = to_double(k, v); }},
             {"vol_nm1", [](auto& c, auto& k, auto& v) { c.bounds.params.vol_nm1 = to_double(k, v); }},
             {"sigma_n", [](auto& c, auto& k, auto& v) { c.bounds.params.sigma_n = to_double(k, v); }},
             {"k_min", [](auto& c, auto& k, auto& v) { c.bounds.k_min = to_double(k, v); }},
             {"k_max", [](auto& c, auto& k, auto& v) { c.bounds.k_max = to_double(k, v); }},
             {"samples", [](auto& c, auto& k, auto& v) { c.bounds.samples = static_cast<int>(to_integer(k, v)); }},
         }},
        {"output",
         {
             {"dir", [](auto& c, auto&, auto& v) { c.output_dir = v; }},
             {"heatmaps", [](auto& c, auto& k, auto& v) { c.heatmaps = to_bool(k, v); }},
         }},
        {"run",
         {
             {"workers", [](auto& c, auto& k, auto& v) { c.workers = static_cast<int>(to_integer(k, v)); }},
         }},
    };
    return g;
}

void check(const ExperimentConfig& c) {
    if (c.domain.n_forward < 16 || c.domain.n_inversion < 16) throw ConfigError("grids need at least 16 nodes per side");
    if (c.domain.n_boundary < 8) throw ConfigError("n_boundary must be at least 8");
    if (!(c.domain.radius > 0.0) || c.domain.radius >= c.domain.half_width) {
        throw DomainError("disk radius must lie in (0, half_width)");
    }
    if (c.plan.n_lines < 1) throw ConfigError("n_lines must be at least 1");
    if (c.plan.line_count < 0 || c.plan.line_count > c.plan.n_lines) throw ConfigError("line_count must be in 0..n_lines");
    if (!c.plan.lines.empty() && c.plan.line_count != 0) throw ConfigError("set either lines or line_count, not both");
    if (c.physics.k_list.empty()) throw ConfigError("physics.k must list at least one wavenumber");
    for (double k : c.physics.k_list) {
        if (!(k > 0.0)) throw DomainError("wavenumbers must be positive");
    }
    if (c.physics.m_list.empty()) throw ConfigError("physics.m must list at least one truncation multiplier");
    for (double m : c.physics.m_list) {
        if (!(m > 0.0)) throw ConfigError("truncation multipliers must be positive");
    }
    if (c.physics.b < 0.0) throw DomainError("attenuation b must be nonnegative");
    if (c.measurement.noise < 0.0) throw ConfigError("noise must be nonnegative");
    if (c.potential.preset != "case1" && c.potential.preset != "case2" && c.potential.preset != "custom") {
        throw ConfigError("potential.preset must be case1, case2 or custom");
    }
    if (c.potential.preset == "custom" && c.potential.custom.bumps.empty()) {
        throw ConfigError("custom potential needs potential.gaussians");
    }
    if (c.bounds.samples < 2 || !(c.bounds.k_max > c.bounds.k_min) || !(c.bounds.k_min > 0.0)) {
        throw ConfigError("bounds sweep needs 0 < k_min < k_max and at least 2 samples");
    }
    if (c.workers < 0) throw ConfigError("workers must be nonnegative");
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream out;
    out << std::setprecision(17);
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    return out.str();
}

}  // namespace

GaussianMixture ExperimentConfig::mixture() const {
    if (potential.preset == "case1") return case1_potential();
    if (potential.preset == "case2") return case2_potential();
    return potential.custom;
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream o;
    o << std::setprecision(17);
    o << "[domain]\nhalf_width=" << domain.half_width << "\nradius=" << domain.radius << "\nn_forward=" << domain.n_forward
      << "\nn_inversion=" << domain.n_inversion << "\nn_boundary=" << domain.n_boundary << "\n";
    o << "[plan]\nn_lines=" << plan.n_lines << "\nkappa_min=" << plan.kappa_min << "\nkappa_max=" << plan.kappa_max
      << "\nd_kappa=" << plan.d_kappa << "\nlines=" << join(plan.lines) << "\nline_count=" << plan.line_count << "\n";
    o << "[physics]\nk=" << join(physics.k_list) << "\nb=" << physics.b << "\nm=" << join(physics.m_list)
      << "\nb_list=" << join(physics.b_list) << "\n";
    o << "[potential]\npreset=" << potential.preset << "\ngaussians=";
    for (const auto& g : potential.custom.bumps) {
        o << g.amplitude << ' ' << g.center.x << ' ' << g.center.y << ' ' << g.width << ';';
    }
    o << "\nc_max=" << potential.c_max << "\nm1=" << potential.m1 << "\n";
    o << "[measurement]\nmode=" << to_string(measurement.mode) << "\nreference=" << to_string(measurement.reference)
      << "\nnoise=" << measurement.noise << "\nseed=" << measurement.seed << "\n";
    o << "[forward]\nkappa=" << forward.kappa << "\ndirection=" << forward.direction.x << ',' << forward.direction.y
      << "\n";
    const auto& p = bounds.params;
    o << "[bounds]\nn=" << p.n << "\neps=" << p.eps << "\nM1=" << p.M1 << "\nD=" << p.D << "\nC_omega=" << p.C_omega
      << "\nb=" << p.b << "\nvol_n=" << p.vol_n << "\nvol_nm1=" << p.vol_nm1 << "\nsigma_n=" << p.sigma_n
      << "\nk_min=" << bounds.k_min << "\nk_max=" << bounds.k_max << "\nsamples=" << bounds.samples << "\n";
    o << "[output]\ndir=" << output_dir.generic_string() << "\nheatmaps=" << (heatmaps ? "true" : "false") << "\n";
    return o.str();
}

ExperimentConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }
    ExperimentConfig cfg;
    const auto& g = grammar();
    for (const auto& [section, body] : tree) {
        const auto sec = g.find(section);
        if (sec == g.end()) {
            if (body.empty()) throw ConfigError("key '" + section + "' must sit inside a [section]");
            throw ConfigError("unknown config section [" + section + "]");
        }
        for (const auto& [key, node] : body) {
            const auto setter = sec->second.find(key);
            if (setter == sec->second.end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
            setter->second(cfg, section + "." + key, trim(node.data()));
        }
    }
    check(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace potrec
