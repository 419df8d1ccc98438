#include "flmlab/harness.hpp"

#include <chrono>
#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "experiments.hpp"
#include "flmlab/errors.hpp"
#include "flmlab/params.hpp"

#ifndef FLMLAB_VERSION
#define FLMLAB_VERSION "unknown"
#endif

namespace flmlab {

namespace {

constexpr const char* kConfigPrefix = "config:";

} // namespace

ParamView::ParamView(const std::vector<ParamDecl>& decls, const std::map<std::string, std::string>& given,
                     const Config& cfg)
    : cfg_(cfg) {
    for (const auto& [key, value] : given) {
        bool known = false;
        for (const auto& d : decls) known = known || d.key == key;
        if (!known) throw InvalidArgument("unknown parameter '" + key + "'");
    }
    for (const auto& d : decls) {
        auto it = given.find(d.key);
        if (it != given.end()) {
            values_[d.key] = it->second;
        } else if (d.default_value.rfind(kConfigPrefix, 0) == 0) {
            const std::string cfg_key = d.default_value.substr(std::string(kConfigPrefix).size());
            if (cfg_key == "mc.samples") values_[d.key] = std::to_string(cfg.mc_samples());
            else if (auto v = cfg.get(cfg_key)) values_[d.key] = *v;
        } else if (!d.default_value.empty()) {
            values_[d.key] = d.default_value;
        }
    }
}

bool ParamView::has(const std::string& key) const { return values_.count(key) != 0; }

std::string ParamView::str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw InvalidArgument("parameter '" + key + "' has no value");
    return it->second;
}

long ParamView::integer(const std::string& key) const { return parse_long(str(key), key); }
double ParamView::real(const std::string& key) const { return parse_double(str(key), key); }
std::vector<int> ParamView::int_list(const std::string& key) const { return parse_int_list(str(key), key); }

bool ExperimentResult::pass() const {
    for (const auto& [name, ok] : checks) {
        if (!ok) return false;
    }
    return true;
}

const std::vector<ExperimentInfo>& registry() {
    static const std::vector<ExperimentInfo> reg = build_registry();
    return reg;
}

const ExperimentInfo& find_experiment(const std::string& name) {
    for (const auto& e : registry()) {
        if (e.name == name) return e;
    }
    throw UnknownExperiment("unknown experiment '" + name + "' (see 'flmlab list')");
}

ExperimentResult execute(const ExperimentSpec& spec, const Config& cfg) {
    const ExperimentInfo& info = find_experiment(spec.name);
    const ParamView view(info.params, spec.params, cfg);
    return info.run(view, spec.seed);
}

std::string summary_path_for(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".json");
    return p.string();
}

std::string version_string() { return FLMLAB_VERSION; }

RunOutcome run(const ExperimentSpec& spec, const Config& cfg) {
    if (spec.out.empty()) throw InvalidArgument("run: an output CSV path is required");
    const ExperimentInfo& info = find_experiment(spec.name);
    const ParamView view(info.params, spec.params, cfg);
    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome out;
    out.result = info.run(view, spec.seed);
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.csv_path = spec.out;
    out.summary_path = summary_path_for(spec.out);

    const std::string csv = out.result.csv.str();
    nlohmann::ordered_json j;
    j["experiment"] = info.name;
    j["module"] = info.module;
    j["criteria"] = info.criteria;
    j["params"] = view.resolved();
    j["seed"] = spec.seed;
    j["version"] = version_string();
    j["wall_time"] = out.wall_seconds;
    j["pass"] = out.result.pass();
    j["checks"] = out.result.checks;
    j["metrics"] = out.result.metrics;
    j["notes"] = out.result.notes;
    j["csv"] = std::filesystem::path(spec.out).filename().string();
    j["csv_fnv1a"] = checksum_hex(csv);

    const auto parent = std::filesystem::path(spec.out).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        if (ec) throw IoError("cannot create " + parent.string() + ": " + ec.message());
    }
    write_file_atomic(out.csv_path, csv);
    write_file_atomic(out.summary_path, j.dump(2) + "\n");
    return out;
}

bool ReportTable::all_pass() const {
    for (const auto& r : rows) {
        if (!r.pass) return false;
    }
    return true;
}

std::string ReportTable::str() const {
    std::ostringstream os;
    os << "criterion  result  experiments\n";
    for (const auto& r : rows) {
        os << (r.criterion ? std::to_string(r.criterion) : std::string("-"));
        os << std::string(11 - (r.criterion ? std::to_string(r.criterion).size() : 1), ' ');
        os << (r.pass ? "PASS    " : "FAIL    ");
        for (std::size_t i = 0; i < r.experiments.size(); ++i) os << (i ? "," : "") << r.experiments[i];
        os << '\n';
    }
    return os.str();
}

ReportTable report(const std::vector<std::string>& summary_paths) {
    std::map<int, ReportRow> by_criterion;
    for (const auto& path : summary_paths) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_file(path));
        } catch (const nlohmann::json::exception& e) {
            throw IoError("corrupt summary " + path + ": " + e.what());
        }
        std::string name, csv_name, checksum;
        bool pass = false;
        std::vector<int> criteria;
        try {
            name = j.at("experiment").get<std::string>();
            csv_name = j.at("csv").get<std::string>();
            checksum = j.at("csv_fnv1a").get<std::string>();
            pass = j.at("pass").get<bool>();
            criteria = j.at("criteria").get<std::vector<int>>();
        } catch (const nlohmann::json::exception& e) {
            throw IoError("corrupt summary " + path + ": " + e.what());
        }
        const auto csv_path = std::filesystem::path(path).parent_path() / csv_name;
        if (checksum_hex(read_file(csv_path.string())) != checksum) {
            throw ChecksumMismatch(csv_path.string() + " does not match the checksum in " + path);
        }
        if (criteria.empty()) criteria.push_back(0);
        for (int c : criteria) {
            ReportRow& row = by_criterion[c];
            row.criterion = c;
            row.experiments.push_back(name);
            row.pass = row.pass && pass;
        }
    }
    ReportTable t;
    for (auto& [c, row] : by_criterion) {
        if (c != 0) t.rows.push_back(std::move(row));
    }
    if (auto it = by_criterion.find(0); it != by_criterion.end()) t.rows.push_back(std::move(it->second));
    return t;
}

} // namespace flmlab
