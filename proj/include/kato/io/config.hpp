#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kato/ensemble/ensemble.hpp"

namespace kato {

/// Flat sectioned key = value text. '#' and ';' start comments.
struct IniDocument {
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::string source = "<config>";
    std::map<std::string, std::map<std::string, Entry>> sections;

    bool has(const std::string& section, const std::string& key) const;
    const Entry* find(const std::string& section, const std::string& key) const;
    void set(const std::string& section, const std::string& key, const std::string& value);
};

/// Throws ConfigError("source:line: ...") on malformed lines or duplicate keys.
IniDocument parse_ini(const std::string& text, const std::string& source = "<config>");
IniDocument load_ini(const std::string& path);

/// Sorted sections and keys, whitespace trimmed, one "key=value" per line.
std::string canonical_text(const IniDocument& doc);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t x);
std::uint64_t config_hash(const IniDocument& doc);

enum class ViscosityField { none, single, list };

/// Builds the experiment configuration. ViscosityField::single requires [physics] nu,
/// ViscosityField::list requires [physics] nu_list; the missing field is named in the error.
ExperimentConfig experiment_from_ini(const IniDocument& doc, ViscosityField nu_field);

/// Accessors with "source:line: section.key" diagnostics.
double ini_double(const IniDocument& doc, const std::string& section, const std::string& key, double fallback);
int ini_int(const IniDocument& doc, const std::string& section, const std::string& key, int fallback);
std::uint64_t ini_u64(const IniDocument& doc, const std::string& section, const std::string& key,
                      std::uint64_t fallback);
std::uint64_t parse_u64(const std::string& text, const std::string& context);
std::vector<double> ini_doubles(const IniDocument& doc, const std::string& section, const std::string& key,
                                const std::vector<double>& fallback);
std::string ini_string(const IniDocument& doc, const std::string& section, const std::string& key,
                       const std::string& fallback);
bool ini_bool(const IniDocument& doc, const std::string& section, const std::string& key, bool fallback);

/// "amp:m:sin|cos:n" terms separated by ';'.
StreamFunction parse_stream_terms(const std::string& text, double length_x);

}  // namespace kato
