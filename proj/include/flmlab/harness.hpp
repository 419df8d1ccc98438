#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "flmlab/config.hpp"
#include "flmlab/csv.hpp"

namespace flmlab {

struct ParamDecl {
    std::string key;
    std::string default_value; // empty: optional with no default
    std::string help;
};

struct ExperimentSpec {
    std::string name;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    std::string out; // CSV path; the summary goes next to it with a .json suffix
};

// Parameter lookup against a declared schema; unknown keys are rejected up front.
class ParamView {
public:
    ParamView(const std::vector<ParamDecl>& decls, const std::map<std::string, std::string>& given,
              const Config& cfg);

    bool has(const std::string& key) const;
    std::string str(const std::string& key) const;
    long integer(const std::string& key) const;
    double real(const std::string& key) const;
    std::vector<int> int_list(const std::string& key) const;
    // Effective values, defaults filled in (for the summary).
    const std::map<std::string, std::string>& resolved() const { return values_; }
    const Config& config() const { return cfg_; }

private:
    std::map<std::string, std::string> values_;
    const Config& cfg_;
};

struct ExperimentResult {
    CsvTable csv;
    std::map<std::string, double> metrics;
    std::map<std::string, bool> checks;
    std::vector<std::string> notes;
    bool pass() const;
};

struct ExperimentInfo {
    std::string name;
    std::string module;
    std::string description;
    std::vector<ParamDecl> params;
    std::vector<int> criteria; // acceptance criteria this experiment contributes to
    std::function<ExperimentResult(const ParamView&, std::uint64_t seed)> run;
};

const std::vector<ExperimentInfo>& registry();
// Throws UnknownExperiment.
const ExperimentInfo& find_experiment(const std::string& name);

// Runs the experiment without touching the filesystem.
ExperimentResult execute(const ExperimentSpec& spec, const Config& cfg = {});

struct RunOutcome {
    ExperimentResult result;
    std::string csv_path;
    std::string summary_path;
    double wall_seconds = 0.0;
};

// execute() plus the CSV and a JSON summary (parameters, seed, version,
// wall time, checks, metrics, CSV checksum). Nothing is written if the
// experiment is unknown or fails.
RunOutcome run(const ExperimentSpec& spec, const Config& cfg = {});

std::string summary_path_for(const std::string& csv_path);
std::string version_string();

struct ReportRow {
    int criterion = 0; // 0 for summaries that feed no criterion
    std::vector<std::string> experiments;
    bool pass = true;
};

struct ReportTable {
    std::vector<ReportRow> rows;
    bool all_pass() const;
    std::string str() const;
};

// Merges JSON summaries into one row per criterion. Throws IoError for a
// missing or unreadable summary and ChecksumMismatch when a CSV no longer
// matches the checksum recorded next to it.
ReportTable report(const std::vector<std::string>& summary_paths);

} // namespace flmlab
