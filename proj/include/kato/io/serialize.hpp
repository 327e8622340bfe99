#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kato/corrector/corrector.hpp"
#include "kato/diagnostics/conditions.hpp"
#include "kato/ensemble/ensemble.hpp"

namespace kato {

using Json = nlohmann::ordered_json;

/// 17 significant digits, exact round trip for doubles.
std::string fmt17(double x);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add(std::vector<double> row);
    /// First line "# config_hash=<hex>", then the header and the rows.
    std::string render(const std::string& config_hash) const;
};

struct ManifestEntry {
    std::string name;
    std::uint64_t bytes = 0;
    std::string checksum;  // FNV-1a 64 of the content
};

/// Output directory that records every file it writes. Timestamps live only in
/// manifest.json; all other files are pure functions of the configuration.
class OutputDir {
public:
    OutputDir(std::string path, std::string config_hash);

    const std::string& path() const { return path_; }
    const std::string& config_hash() const { return hash_; }

    void write(const std::string& name, const std::string& content);
    void write_csv(const std::string& name, const CsvTable& table) { write(name, table.render(hash_)); }
    void write_json(const std::string& name, Json doc);
    /// manifest.json: hash, tool version, platform, start and end time, file inventory.
    void finish(const std::string& command, const std::string& canonical_config);

private:
    std::string path_;
    std::string hash_;
    std::string started_;
    std::vector<ManifestEntry> files_;
};

std::string utc_timestamp();
std::string platform_string();
extern const char* const tool_version;

Json to_json(const MeanEstimate& e);
Json to_json(const ConditionReport& r);
Json to_json(const CorrectorReport& r);
Json to_json(const ExperimentConfig& c);
Json to_json(const SweepReport& r);

CsvTable sweep_table(const SweepReport& r);
CsvTable record_table(const TrajectoryRecord& r);
CsvTable euler_table(const EulerTrajectory& t);
CsvTable corrector_table(const CorrectorReport& r);
CsvTable slope_table(const CorrectorReport& r);

/// Rejects a comparison of outputs produced from different configurations.
void require_same_hash(const std::string& a, const std::string& b);

}  // namespace kato
