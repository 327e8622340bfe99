#include "kato/io/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "kato/errors.hpp"

namespace kato {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string where(const IniDocument& doc, const IniDocument::Entry& e, const std::string& section,
                  const std::string& key) {
    return doc.source + ":" + std::to_string(e.line) + ": " + section + "." + key;
}

double to_double(const std::string& text, const std::string& context) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw ConfigError(context + ": expected a number, got '" + t + "'");
    return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

// Allowed keys per section; anything else is a typo worth reporting.
const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"grid", {"nx", "ny", "length_x"}},
        {"time", {"T", "dt", "checkpoints", "dense_snapshots"}},
        {"physics", {"nu", "nu_list", "c", "n_modes", "mode"}},
        {"ensemble", {"M", "seed", "path", "max_halvings"}},
        {"initial", {"kind", "amplitude", "s", "m", "seed", "perturbation_scale", "perturbation_power"}},
        {"forcing", {"terms", "frequency", "perturbation_terms", "perturbation_scale", "perturbation_power"}},
        {"solver", {"kind", "tolerance", "max_iterations", "cfl_limit"}},
        {"corrector", {"deltas", "dt", "time", "slope_tolerance", "hard"}},
        {"audit", {"dts", "weak_paths"}},
        {"gronwall", {"perturbation", "force_scale"}},
        {"theorem6", {"m_first", "threshold"}},
    };
    return s;
}

}  // namespace

bool IniDocument::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

const IniDocument::Entry* IniDocument::find(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    if (s == sections.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

void IniDocument::set(const std::string& section, const std::string& key, const std::string& value) {
    sections[section][key] = Entry{value, 0};
}

IniDocument parse_ini(const std::string& text, const std::string& source) {
    IniDocument doc;
    doc.source = source;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find_first_of("#;");
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const std::string at = source + ":" + std::to_string(line) + ": ";
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(at + "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) throw ConfigError(at + "empty section name");
            if (!schema().count(section)) throw ConfigError(at + "unknown section [" + section + "]");
            doc.sections[section];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(at + "expected key = value");
        if (section.empty()) throw ConfigError(at + "key outside of any section");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(at + "empty key");
        if (!schema().at(section).count(key)) throw ConfigError(at + "unknown key " + section + "." + key);
        if (doc.sections[section].count(key)) throw ConfigError(at + "duplicate key " + section + "." + key);
        doc.sections[section][key] = IniDocument::Entry{value, line};
    }
    return doc;
}

IniDocument load_ini(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_ini(ss.str(), path);
}

std::string canonical_text(const IniDocument& doc) {
    std::string out;
    for (const auto& [section, keys] : doc.sections) {
        if (keys.empty()) continue;
        out += "[" + section + "]\n";
        for (const auto& [key, entry] : keys) {
            std::string v;
            bool space = false;
            for (char c : trim(entry.value)) {
                if (c == ' ' || c == '\t') {
                    space = true;
                    continue;
                }
                if (space && !v.empty()) v += ' ';
                space = false;
                v += c;
            }
            out += key + "=" + v + "\n";
        }
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

std::uint64_t config_hash(const IniDocument& doc) { return fnv1a64(canonical_text(doc)); }

double ini_double(const IniDocument& doc, const std::string& section, const std::string& key, double fallback) {
    const auto* e = doc.find(section, key);
    return e ? to_double(e->value, where(doc, *e, section, key)) : fallback;
}

int ini_int(const IniDocument& doc, const std::string& section, const std::string& key, int fallback) {
    const auto* e = doc.find(section, key);
    if (!e) return fallback;
    const double x = to_double(e->value, where(doc, *e, section, key));
    if (x != static_cast<double>(static_cast<long long>(x)) || std::abs(x) > 2e9)
        throw ConfigError(where(doc, *e, section, key) + ": expected an integer, got '" + e->value + "'");
    return static_cast<int>(x);
}

std::uint64_t ini_u64(const IniDocument& doc, const std::string& section, const std::string& key,
                      std::uint64_t fallback) {
    const auto* e = doc.find(section, key);
    if (!e) return fallback;
    return parse_u64(e->value, where(doc, *e, section, key));
}

std::uint64_t parse_u64(const std::string& text, const std::string& context) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE)
        throw ConfigError(context + ": expected an unsigned 64-bit integer, got '" + t + "'");
    return x;
}

std::vector<double> ini_doubles(const IniDocument& doc, const std::string& section, const std::string& key,
                                const std::vector<double>& fallback) {
    const auto* e = doc.find(section, key);
    if (!e) return fallback;
    std::vector<double> out;
    for (const std::string& part : split(e->value, ','))
        out.push_back(to_double(part, where(doc, *e, section, key)));
    return out;
}

std::string ini_string(const IniDocument& doc, const std::string& section, const std::string& key,
                       const std::string& fallback) {
    const auto* e = doc.find(section, key);
    return e ? e->value : fallback;
}

bool ini_bool(const IniDocument& doc, const std::string& section, const std::string& key, bool fallback) {
    const auto* e = doc.find(section, key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
    if (e->value == "false" || e->value == "0" || e->value == "no") return false;
    throw ConfigError(where(doc, *e, section, key) + ": expected true or false, got '" + e->value + "'");
}

StreamFunction parse_stream_terms(const std::string& text, double length_x) {
    StreamFunction s;
    s.length_x = length_x;
    for (const std::string& term : split(text, ';')) {
        if (term.empty()) continue;
        const std::vector<std::string> f = split(term, ':');
        if (f.size() != 4 || (f[2] != "sin" && f[2] != "cos"))
            throw ConfigError("stream term '" + term + "' must read amplitude:m:sin|cos:n");
        StreamTerm t;
        t.amplitude = to_double(f[0], "stream term amplitude");
        t.m = static_cast<int>(to_double(f[1], "stream term m"));
        t.sine = f[2] == "sin";
        t.n = static_cast<int>(to_double(f[3], "stream term n"));
        if (t.m < 0 || t.n < 1) throw ConfigError("stream term '" + term + "' needs m >= 0 and n >= 1");
        s.terms.push_back(t);
    }
    return s;
}

ExperimentConfig experiment_from_ini(const IniDocument& doc, ViscosityField nu_field) {
    ExperimentConfig c;
    c.nx = ini_int(doc, "grid", "nx", c.nx);
    c.ny = ini_int(doc, "grid", "ny", c.ny);
    c.length_x = ini_double(doc, "grid", "length_x", c.length_x);
    c.horizon = ini_double(doc, "time", "T", c.horizon);
    c.dt = ini_double(doc, "time", "dt", c.dt);
    c.checkpoints = ini_int(doc, "time", "checkpoints", c.checkpoints);
    c.dense_snapshots = ini_bool(doc, "time", "dense_snapshots", false);

    if (nu_field == ViscosityField::list) {
        if (!doc.has("physics", "nu_list")) throw ConfigError(doc.source + ": missing required field physics.nu_list");
        c.nu_list = ini_doubles(doc, "physics", "nu_list", {});
    } else if (nu_field == ViscosityField::single) {
        if (!doc.has("physics", "nu")) throw ConfigError(doc.source + ": missing required field physics.nu");
        c.nu_list = {ini_double(doc, "physics", "nu", 0.0)};
    } else if (doc.has("physics", "nu")) {
        c.nu_list = {ini_double(doc, "physics", "nu", 0.0)};
    }
    c.layer_c = ini_double(doc, "physics", "c", c.layer_c);
    c.n_modes = ini_int(doc, "physics", "n_modes", c.n_modes);
    c.mode = parse_run_mode(ini_string(doc, "physics", "mode", to_string(c.mode)));

    c.ensemble_size = ini_int(doc, "ensemble", "M", c.ensemble_size);
    c.seed = ini_u64(doc, "ensemble", "seed", c.seed);
    c.max_halvings = ini_int(doc, "ensemble", "max_halvings", c.max_halvings);

    c.ic.kind = parse_ic_kind(ini_string(doc, "initial", "kind", to_string(c.ic.kind)));
    c.ic.amplitude = ini_double(doc, "initial", "amplitude", c.ic.amplitude);
    c.ic.s = ini_double(doc, "initial", "s", c.ic.s);
    c.ic.m = ini_double(doc, "initial", "m", c.ic.m);
    c.ic.seed = ini_u64(doc, "initial", "seed", c.seed);
    c.perturbation_scale = ini_double(doc, "initial", "perturbation_scale", c.perturbation_scale);
    c.perturbation_power = ini_double(doc, "initial", "perturbation_power", c.perturbation_power);

    c.forcing.stream = parse_stream_terms(ini_string(doc, "forcing", "terms", ""), c.length_x);
    c.forcing.frequency = ini_double(doc, "forcing", "frequency", 0.0);
    c.forcing_perturbation.stream = parse_stream_terms(ini_string(doc, "forcing", "perturbation_terms", ""), c.length_x);
    c.forcing_perturbation.frequency = c.forcing.frequency;
    c.forcing_perturbation_scale = ini_double(doc, "forcing", "perturbation_scale", c.forcing_perturbation_scale);
    c.forcing_perturbation_power = ini_double(doc, "forcing", "perturbation_power", c.forcing_perturbation_power);

    const std::string kind = ini_string(doc, "solver", "kind", "direct");
    if (kind == "direct")
        c.solver.kind = SolverKind::direct;
    else if (kind == "iterative")
        c.solver.kind = SolverKind::iterative;
    else
        throw ConfigError(doc.source + ":" + std::to_string(doc.find("solver", "kind")->line) +
                          ": solver.kind must be direct or iterative");
    c.solver.tolerance = ini_double(doc, "solver", "tolerance", c.solver.tolerance);
    c.solver.max_iterations = ini_int(doc, "solver", "max_iterations", c.solver.max_iterations);
    c.cfl_limit = ini_double(doc, "solver", "cfl_limit", c.cfl_limit);

    c.corrector_deltas = ini_doubles(doc, "corrector", "deltas", {});
    c.corrector_dt = ini_double(doc, "corrector", "dt", c.corrector_dt);
    return c;
}

}  // namespace kato
