// Runs the experiment suite with its default parameters and prints one
// PASS/FAIL line per acceptance criterion. The exit status reports whether
// the suite ran to completion, not whether every criterion passed.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "flmlab/csv.hpp"
#include "flmlab/errors.hpp"
#include "flmlab/harness.hpp"

using namespace flmlab;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240101;

struct Job {
    std::string file; // CSV stem
    std::string experiment;
    std::map<std::string, std::string> params;
};

struct Criterion {
    int id;
    std::string title;
    std::vector<Job> jobs;
    double budget_seconds;
};

std::vector<Criterion> suite() {
    return {
        {1, "recursion counts match enumeration", {{"hanner-counts", "hanner-counts", {}}}, 10},
        {2, "dyadic slopes for a in {0.25, 0.5, 0.75}",
         {{"hanner-family-0.25", "hanner-family", {{"a", "0.25"}}},
          {"hanner-family-0.5", "hanner-family", {{"a", "0.5"}}},
          {"hanner-family-0.75", "hanner-family", {{"a", "0.75"}}}},
         5},
        {3, "padded family ratio bracket", {{"padded-family", "padded-family", {}}}, 5},
        {4, "exact cap measure grid", {{"cap-grid", "cap-grid", {}}}, 1},
        {5, "mean width bound from vertex count", {{"lemma22", "lemma22", {{"samples", "100000"}}}}, 120},
        {6, "M M* >= 1, eq4 identity, certificate >= 1/9", {{"flm-suite", "flm-suite", {{"samples", "100000"}}}},
         300},
        {7, "K_n slopes and prescribed Dvoretzky dimensions",
         {{"geom-sweep", "geom-sweep", {{"samples", "1000000"}}}, {"geom-flm", "geom-flm", {{"samples", "1000000"}}}},
         900},
        {8, "cross-polytope and simplex sections",
         {{"cross-section-3", "cross-section", {{"n", "3"}}},
          {"cross-section-4", "cross-section", {{"n", "4"}}},
          {"cross-section-5", "cross-section", {{"n", "5"}, {"median-floor", "1.2"}}},
          {"simplex-mstar", "simplex-mstar", {{"samples", "100000"}}}},
         300},
        {9, "duality property suite", {{"duality-suite", "duality-suite", {}}}, 60},
    };
}

std::string failed_checks(const ExperimentResult& r) {
    std::string out;
    for (const auto& [name, ok] : r.checks) {
        if (!ok) out += (out.empty() ? "" : ", ") + name;
    }
    return out;
}

// Runs every job into dir; returns wall seconds per criterion and fills details.
std::map<int, double> run_suite(const fs::path& dir, const Config& cfg, std::map<int, std::string>* details,
                                std::vector<std::string>* summaries) {
    std::map<int, double> seconds;
    for (const Criterion& c : suite()) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        for (const Job& j : c.jobs) {
            const RunOutcome o = run({j.experiment, j.params, kSeed, (dir / (j.file + ".csv")).string()}, cfg);
            if (summaries) summaries->push_back(o.summary_path);
            const std::string bad = failed_checks(o.result);
            if (!bad.empty()) detail += (detail.empty() ? "" : "; ") + j.file + ": " + bad;
            if (j.file == "cross-section-5") {
                char buf[96];
                std::snprintf(buf, sizeof buf, "median r sqrt(2n) at n=5 is %.3f",
                              o.result.metrics.at("median_r_over_trivial"));
                detail += (detail.empty() ? "" : "; ") + std::string(buf);
            }
        }
        seconds[c.id] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (details) (*details)[c.id] = detail;
    }
    return seconds;
}

std::map<std::string, std::string> csv_bytes(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".csv") out[e.path().filename().string()] = read_file(e.path().string());
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    try {
        const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "flmlab-acceptance";
        const fs::path first = root / "run1", second = root / "run2";
        fs::remove_all(root);
        fs::create_directories(first);
        fs::create_directories(second);
        const Config cfg = Config::from_env();

        std::map<int, std::string> details;
        std::vector<std::string> summaries;
        const std::map<int, double> seconds = run_suite(first, cfg, &details, &summaries);
        const ReportTable table = report(summaries);

        int failures = 0;
        for (const Criterion& c : suite()) {
            bool pass = false;
            for (const auto& row : table.rows) {
                if (row.criterion == c.id) pass = row.pass;
            }
            const double t = seconds.at(c.id);
            const bool in_time = t <= c.budget_seconds;
            std::string detail = details[c.id];
            if (!in_time) detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
            const bool ok = pass && in_time;
            failures += ok ? 0 : 1;
            std::printf("criterion %2d %s  %s (%.1f s / %.0f s)%s%s\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), t,
                        c.budget_seconds, detail.empty() ? "" : ": ", detail.c_str());
            std::fflush(stdout);
        }

        // Same seed, different worker count: CSVs must match byte for byte.
        const char* prev = std::getenv("FLMLAB_THREADS");
        const std::string saved = prev ? prev : "";
        setenv("FLMLAB_THREADS", "3", 1);
        run_suite(second, cfg, nullptr, nullptr);
        if (prev) setenv("FLMLAB_THREADS", saved.c_str(), 1);
        else unsetenv("FLMLAB_THREADS");
        const auto a = csv_bytes(first), b = csv_bytes(second);
        std::string diff;
        for (const auto& [name, bytes] : a) {
            auto it = b.find(name);
            if (it == b.end() || it->second != bytes) diff += (diff.empty() ? "" : ", ") + name;
        }
        const bool same = diff.empty() && a.size() == b.size();
        failures += same ? 0 : 1;
        std::printf("criterion 10 %s  byte-identical CSVs on rerun (%zu files, 3 workers)%s%s\n",
                    same ? "PASS" : "FAIL", a.size(), diff.empty() ? "" : ": differ in ", diff.c_str());
        std::printf("%d of 10 criteria failed\n", failures);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: %s\n", e.what());
        return 2;
    }
}
