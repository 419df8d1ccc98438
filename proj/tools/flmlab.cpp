// Command-line front end: list, enumerate, estimate, hanner, experiment/run, report.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flmlab/bodyspec.hpp"
#include "flmlab/config.hpp"
#include "flmlab/errors.hpp"
#include "flmlab/harness.hpp"
#include "flmlab/hanner.hpp"
#include "flmlab/params.hpp"
#include "flmlab/sphere.hpp"

namespace {

using namespace flmlab;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// "--key value", "--key=value" or "key=value".
std::map<std::string, std::string> parse_extras(const std::vector<std::string>& args) {
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string a = args[i];
        if (a.rfind("--", 0) == 0) {
            a = a.substr(2);
            const auto eq = a.find('=');
            if (eq != std::string::npos) {
                out[a.substr(0, eq)] = a.substr(eq + 1);
            } else {
                if (i + 1 >= args.size()) throw InvalidArgument("missing value for --" + a);
                out[a] = args[++i];
            }
        } else {
            const auto eq = a.find('=');
            if (eq == std::string::npos || eq == 0) throw InvalidArgument("expected key=value, got '" + a + "'");
            out[a.substr(0, eq)] = a.substr(eq + 1);
        }
    }
    return out;
}

void print_result(const ExperimentResult& r) {
    for (const auto& [k, v] : r.metrics) std::printf("  %-40s %s\n", k.c_str(), format_shortest(v).c_str());
    for (const auto& [k, v] : r.checks) std::printf("  %-40s %s\n", k.c_str(), v ? "PASS" : "FAIL");
    for (const auto& n : r.notes) std::printf("  note: %s\n", n.c_str());
}

int cmd_list() {
    for (const auto& e : registry()) {
        std::printf("%-16s %-13s %s\n", e.name.c_str(), e.module.c_str(), e.description.c_str());
        for (const auto& p : e.params) {
            std::printf("    --%-14s %-18s %s\n", p.key.c_str(),
                        p.default_value.empty() ? "(unset)" : p.default_value.c_str(), p.help.c_str());
        }
    }
    return kPass;
}

int cmd_enumerate(const std::string& spec, const Config& cfg) {
    const StandardBody b = make_standard(parse_body_spec(spec), cfg.enum_limits());
    std::printf("body %s\ndim %d\n", b.name.c_str(), b.dim);
    if (b.counts) {
        std::printf("vertices %s\nfacets %s\n", b.counts->num_vertices.str().c_str(),
                    b.counts->num_facets.str().c_str());
    }
    std::printf("r %s\nR %s\n", format_full(b.r).c_str(), format_full(b.R).c_str());
    if (b.counts) {
        const FlmReport f = flm_certificate(*b.counts, b.r, b.R);
        std::printf("certificate %s\n", format_full(f.certificate).c_str());
    }
    return kPass;
}

int cmd_estimate(const std::string& spec, const std::string& quantity, std::uint64_t samples, std::uint64_t seed,
                 const std::string& out, const Config& cfg) {
    const StandardBody b = make_standard(parse_body_spec(spec), cfg.enum_limits());
    if (!b.has_oracles()) throw LimitExceeded(b.name + " is too large to give support or gauge oracles");
    auto g = [&b](const Vector& x) { return b.gauge(x); };
    auto h = [&b](const Vector& x) { return b.support(x); };
    CsvTable t({"body", "quantity", "mean", "std_error", "samples", "seed"});
    auto add = [&](const std::string& q, double mean, double err) {
        t.add_row({b.name, q, CsvTable::cell(mean), CsvTable::cell(err), CsvTable::cell(samples), CsvTable::cell(seed)});
    };
    if (quantity == "m") {
        const MCEstimate e = mc_M(g, b.dim, samples, seed);
        add("M", e.mean, e.std_error);
    } else if (quantity == "mstar") {
        const MCEstimate e = mc_mean_width(h, b.dim, samples, seed);
        add("Mstar", e.mean, e.std_error);
    } else {
        const MMStarEstimate e = mc_m_mstar(g, h, b.dim, samples, seed);
        add("M", e.m.mean, e.m.std_error);
        add("Mstar", e.mstar.mean, e.mstar.std_error);
        add("MMstar", e.product, e.product_err);
    }
    if (out.empty()) std::fputs(t.str().c_str(), stdout);
    else write_file_atomic(out, t.str());
    return kPass;
}

int cmd_hanner(double a, int max_exp, const std::string& out) {
    const FamilyReport fam = dyadic_family(a, max_exp);
    CsvTable t({"m", "dim", "logV", "logF"});
    for (const auto& r : fam.rows) {
        t.add_row({CsvTable::cell(r.m), CsvTable::cell(r.dim), CsvTable::cell(r.logV), CsvTable::cell(r.logF)});
    }
    if (out.empty()) std::fputs(t.str().c_str(), stdout);
    else write_file_atomic(out, t.str());
    return kPass;
}

int cmd_experiment(const std::string& name, const std::vector<std::string>& extras, std::uint64_t seed,
                   const std::string& out, const Config& cfg) {
    ExperimentSpec spec;
    spec.name = name;
    spec.params = parse_extras(extras);
    spec.seed = seed;
    spec.out = out;
    ExperimentResult result;
    if (out.empty()) {
        result = execute(spec, cfg);
        std::fputs(result.csv.str().c_str(), stdout);
    } else {
        const RunOutcome o = run(spec, cfg);
        result = o.result;
        std::printf("%s: wrote %s and %s (%.2f s)\n", name.c_str(), o.csv_path.c_str(), o.summary_path.c_str(),
                    o.wall_seconds);
    }
    print_result(result);
    std::printf("%s %s\n", name.c_str(), result.pass() ? "PASS" : "FAIL");
    return result.pass() ? kPass : kFail;
}

int cmd_report(const std::vector<std::string>& paths) {
    const ReportTable t = report(paths);
    std::fputs(t.str().c_str(), stdout);
    return t.all_pass() ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flmlab: polytope complexity and FLM-inequality experiments"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (overrides FLMLAB_CONFIG)");
    app.set_version_flag("--version", flmlab::version_string());

    app.add_subcommand("list", "list registered experiments and their parameters");

    auto* en = app.add_subcommand("enumerate", "vertex/facet counts and radii of a standard body");
    std::string body;
    en->add_option("--body", body, "body spec, e.g. cube:4 or hanner:a=0.5,dim=8")->required();

    auto* es = app.add_subcommand("estimate", "Monte Carlo M, M* or M M* of a standard body");
    std::string quantity = "mmstar", out;
    std::uint64_t samples = 100000, seed = 1;
    es->add_option("--body", body, "body spec")->required();
    es->add_option("--quantity", quantity, "m, mstar or mmstar")->check(CLI::IsMember({"m", "mstar", "mmstar"}));
    es->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
    es->add_option("--seed", seed, "seed");
    es->add_option("--out", out, "CSV output (default stdout)");

    auto* ha = app.add_subcommand("hanner", "log-counts of the dyadic tower for density a");
    double a = 0.5;
    int max_exp = 40;
    ha->add_option("--a", a, "product density in (0, 1)");
    ha->add_option("--max-exp", max_exp, "largest m (dimension 2^m)");
    ha->add_option("--out", out, "CSV output (default stdout)");

    std::string name;
    auto setup_experiment = [&](CLI::App* sub) {
        sub->add_option("name", name, "experiment name (see list); parameters follow as key=value or --key value")->required();
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--out", out, "CSV path; a .json summary is written next to it");
        sub->allow_extras();
        sub->prefix_command(false);
    };
    auto* ex = app.add_subcommand("experiment", "run a registered experiment (--key value or key=value)");
    setup_experiment(ex);
    auto* ru = app.add_subcommand("run", "same as experiment");
    setup_experiment(ru);

    auto* re = app.add_subcommand("report", "merge JSON summaries into the acceptance table");
    std::vector<std::string> paths;
    re->add_option("paths", paths, "summary files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        Config cfg = config_path.empty() ? Config::from_env() : Config::load(config_path);
        if (app.got_subcommand("list")) return cmd_list();
        if (app.got_subcommand(en)) return cmd_enumerate(body, cfg);
        if (app.got_subcommand(es)) return cmd_estimate(body, quantity, samples, seed, out, cfg);
        if (app.got_subcommand(ha)) return cmd_hanner(a, max_exp, out);
        if (app.got_subcommand(ex) || app.got_subcommand(ru)) {
            CLI::App* sub = app.got_subcommand(ex) ? ex : ru;
            return cmd_experiment(name, sub->remaining(), seed, out, cfg);
        }
        if (app.got_subcommand(re)) return cmd_report(paths);
    } catch (const flmlab::Error& e) {
        std::fprintf(stderr, "flmlab: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "flmlab: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
