#include "kato/io/serialize.hpp"

#include <sys/utsname.h>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "kato/errors.hpp"
#include "kato/io/config.hpp"

namespace kato {

const char* const tool_version = "1.0.0";

std::string fmt17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void CsvTable::add(std::vector<double> row) {
    if (row.size() != columns.size()) throw ConfigError("csv: row width does not match the header");
    rows.push_back(std::move(row));
}

std::string CsvTable::render(const std::string& config_hash) const {
    std::string out = "# config_hash=" + config_hash + "\n";
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + fmt17(row[c]);
        out += "\n";
    }
    return out;
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string platform_string() {
    utsname u{};
    std::string s = uname(&u) == 0 ? std::string(u.sysname) + " " + u.release + " " + u.machine : "unknown";
#if defined(__clang__)
    s += " clang " __clang_version__;
#elif defined(__GNUC__)
    s += " gcc " __VERSION__;
#endif
    return s;
}

OutputDir::OutputDir(std::string path, std::string config_hash)
    : path_(std::move(path)), hash_(std::move(config_hash)), started_(utc_timestamp()) {
    std::error_code ec;
    std::filesystem::create_directories(path_, ec);
    if (ec || !std::filesystem::is_directory(path_))
        throw ConfigError("cannot create output directory '" + path_ + "'");
}

void OutputDir::write(const std::string& name, const std::string& content) {
    const std::string full = (std::filesystem::path(path_) / name).string();
    std::ofstream f(full, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + full + "'");
    f << content;
    f.close();
    if (!f) throw ConfigError("failed writing '" + full + "'");
    for (auto& e : files_)
        if (e.name == name) {
            e = {name, content.size(), hex64(fnv1a64(content))};
            return;
        }
    files_.push_back({name, content.size(), hex64(fnv1a64(content))});
}

void OutputDir::write_json(const std::string& name, Json doc) {
    if (!doc.contains("config_hash")) {
        Json out;
        out["config_hash"] = hash_;
        for (auto it = doc.begin(); it != doc.end(); ++it) out[it.key()] = it.value();
        doc = std::move(out);
    }
    write(name, doc.dump(2) + "\n");
}

void OutputDir::finish(const std::string& command, const std::string& canonical_config) {
    Json m;
    m["config_hash"] = hash_;
    m["command"] = command;
    m["tool_version"] = tool_version;
    m["platform"] = platform_string();
    m["started"] = started_;
    m["finished"] = utc_timestamp();
    m["config"] = canonical_config;
    Json files = Json::array();
    for (const auto& e : files_) files.push_back({{"name", e.name}, {"bytes", e.bytes}, {"checksum", e.checksum}});
    m["files"] = files;
    const std::string full = (std::filesystem::path(path_) / "manifest.json").string();
    std::ofstream f(full, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + full + "'");
    f << m.dump(2) << "\n";
}

Json to_json(const MeanEstimate& e) { return Json{{"mean", e.mean}, {"se", e.se}, {"count", e.count}}; }

Json to_json(const ConditionReport& r) {
    Json j;
    j["nu"] = r.nu;
    j["layer_delta"] = r.layer_delta;
    j["under_resolved"] = r.under_resolved;
    j["paths_used"] = r.paths_used;
    j["paths_failed"] = r.paths_failed;
    j["checkpoints"] = r.checkpoints;
    j["M1"] = to_json(r.m1);
    j["M1_checkpoint_time"] = r.metrics.checkpoint_times.empty() ? 0.0 : r.metrics.checkpoint_times[r.metrics.m1_checkpoint];
    j["M2"] = to_json(r.m2);
    j["D_total"] = to_json(r.d_total);
    j["D_layer"] = to_json(r.d_layer);
    j["weak_gap_max"] = r.weak_gap_max;
    j["invariants_hold"] = r.invariants_hold();
    j["checkpoint_times"] = r.metrics.checkpoint_times;
    j["mean_gap"] = r.metrics.mean_gap;
    j["weak_gaps"] = r.metrics.weak_gaps;
    j["weak_se"] = r.metrics.weak_se;
    return j;
}

Json to_json(const CorrectorReport& r) {
    Json j;
    j["dt"] = r.dt;
    Json rows = Json::array();
    for (const CorrectorRow& row : r.rows) {
        Json x;
        x["delta"] = row.delta;
        for (std::size_t k = 0; k < corrector_norm_names.size(); ++k) x[corrector_norm_names[k]] = row.norms[k];
        x["hardy_quotient"] = row.hardy_quotient;
        x["trace_mismatch"] = row.trace_mismatch;
        x["under_resolved"] = row.under_resolved;
        rows.push_back(x);
    }
    j["rows"] = rows;
    Json slopes;
    for (std::size_t k = 0; k < corrector_norm_names.size(); ++k)
        slopes[corrector_norm_names[k]] = {{"expected", corrector_exponents[k]},
                                           {"slope", r.slopes[k].slope},
                                           {"ci_low", r.slopes[k].ci_low},
                                           {"ci_high", r.slopes[k].ci_high}};
    j["slopes"] = slopes;
    return j;
}

Json to_json(const ExperimentConfig& c) {
    Json j;
    j["grid"] = {{"nx", c.nx}, {"ny", c.ny}, {"length_x", c.length_x}};
    j["T"] = c.horizon;
    j["dt"] = c.dt;
    j["nu_list"] = c.nu_list;
    j["c"] = c.layer_c;
    j["n_modes"] = c.effective_modes();
    j["M"] = c.ensemble_size;
    j["seed"] = c.seed;
    j["ic"] = {{"kind", to_string(c.ic.kind)}, {"amplitude", c.ic.amplitude}, {"s", c.ic.s}, {"m", c.ic.m}, {"seed", c.ic.seed}};
    j["perturbation"] = {{"scale", c.perturbation_scale}, {"power", c.perturbation_power}};
    j["checkpoints"] = c.checkpoints;
    j["mode"] = to_string(c.mode);
    j["forcing_terms"] = c.forcing.stream.terms.size();
    j["forcing_frequency"] = c.forcing.frequency;
    j["solver"] = {{"kind", c.solver.kind == SolverKind::direct ? "direct" : "iterative"},
                   {"tolerance", c.solver.tolerance},
                   {"max_iterations", c.solver.max_iterations}};
    j["cfl_limit"] = c.cfl_limit;
    j["max_halvings"] = c.max_halvings;
    return j;
}

Json to_json(const SweepReport& r) {
    Json j;
    j["config"] = to_json(r.config);
    j["nus"] = r.nus;
    Json keys = Json::array();
    for (const PathKeys& k : r.keys)
        keys.push_back({{"nu", k.nu},
                        {"nu_index", k.nu_index},
                        {"path", k.path_index},
                        {"brownian_seed", hex64(k.brownian)},
                        {"perturbation_seed", hex64(k.perturbation)}});
    j["key_map"] = keys;
    Json reports = Json::array();
    for (std::size_t q = 0; q < r.reports.size(); ++q) {
        Json x = to_json(r.reports[q]);
        x["substeps"] = r.substeps[q];
        reports.push_back(x);
    }
    j["reports"] = reports;
    j["euler_energy_drift"] = r.euler_energy_drift;
    j["monotone_M2"] = r.monotone_m2;
    j["monotone_D_layer"] = r.monotone_d_layer;
    if (r.corrector) j["corrector"] = to_json(*r.corrector);
    return j;
}

CsvTable sweep_table(const SweepReport& r) {
    CsvTable t;
    t.columns = {"nu", "M1", "M1_se", "M2", "M2_se", "D_total", "D_total_se", "D_layer", "D_layer_se", "weak_gap_max",
                 "paths_failed"};
    for (const ConditionReport& q : r.reports)
        t.add({q.nu, q.m1.mean, q.m1.se, q.m2.mean, q.m2.se, q.d_total.mean, q.d_total.se, q.d_layer.mean, q.d_layer.se,
               q.weak_gap_max, static_cast<double>(q.paths_failed)});
    return t;
}

CsvTable record_table(const TrajectoryRecord& r) {
    CsvTable t;
    t.columns = {"t", "energy", "enstrophy", "layer_dissipation"};
    for (int k = 0; k < r.n_modes; ++k) t.columns.push_back("cross_" + std::to_string(k + 1));
    for (int k = 0; k < r.n_modes; ++k) t.columns.push_back("W_" + std::to_string(k + 1));
    for (std::size_t j = 0; j < r.times.size(); ++j) {
        std::vector<double> row{r.times[j], r.energy[j], r.enstrophy[j], r.layer_dissipation[j]};
        for (int k = 0; k < r.n_modes; ++k) row.push_back(r.cross_at(static_cast<int>(j), k));
        for (int k = 0; k < r.n_modes; ++k) row.push_back(r.w_at(static_cast<int>(j), k));
        t.add(std::move(row));
    }
    return t;
}

CsvTable euler_table(const EulerTrajectory& e) {
    CsvTable t;
    t.columns = {"t", "energy", "grad_linf"};
    for (std::size_t j = 0; j < e.times.size(); ++j) t.add({e.times[j], e.energy[j], e.grad_linf[j]});
    return t;
}

CsvTable corrector_table(const CorrectorReport& r) {
    CsvTable t;
    t.columns = {"delta"};
    for (const char* n : corrector_norm_names) t.columns.push_back(n);
    t.columns.push_back("hardy_quotient");
    t.columns.push_back("trace_mismatch");
    for (const CorrectorRow& row : r.rows) {
        std::vector<double> x{row.delta};
        x.insert(x.end(), row.norms.begin(), row.norms.end());
        x.push_back(row.hardy_quotient);
        x.push_back(row.trace_mismatch);
        t.add(std::move(x));
    }
    return t;
}

CsvTable slope_table(const CorrectorReport& r) {
    CsvTable t;
    t.columns = {"norm_index", "expected", "slope", "ci_low", "ci_high"};
    for (std::size_t k = 0; k < corrector_norm_names.size(); ++k)
        t.add({static_cast<double>(k), corrector_exponents[k], r.slopes[k].slope, r.slopes[k].ci_low, r.slopes[k].ci_high});
    return t;
}

void require_same_hash(const std::string& a, const std::string& b) {
    if (a != b) throw ConfigError("outputs come from different configurations (" + a + " vs " + b + ")");
}

}  // namespace kato
