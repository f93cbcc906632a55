// oppcensus: exhaustive census of minimal vertex sets without a common
// opposite in finite classical incidence geometries, with classification
// of every witness into the known families.
//
// Exit codes: 0 success, 1 theorem violation (unclassified witness,
// minimality failure, or geometric-line mismatch), 2 usage error,
// 3 time budget exhausted before completion.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "opp/cache.hpp"
#include "opp/census.hpp"
#include "opp/report.hpp"

namespace {

namespace fs = std::filesystem;
using opp::GeometryDesc;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string default_cache_dir() {
    const char* env = std::getenv("OPPCENSUS_CACHE");
    return env ? env : "";
}

// The description may carry its own type suffix; an explicit --type must
// agree with it, not silently override it.
GeometryDesc resolve_desc(const std::string& spec, int type_flag) {
    GeometryDesc d = opp::parse_geometry(spec);
    if (type_flag < 0) return d;
    const auto t = static_cast<unsigned>(type_flag);
    if (d.halfspin && t != opp::polar_rank(d))
        throw CLI::ValidationError("--type conflicts with the halfspin suffix");
    if (d.type != 0 && d.type != t)
        throw CLI::ValidationError("--type conflicts with the type suffix in '" + spec + "'");
    if (!d.halfspin) d.type = t;
    return d;
}

void write_reports(const opp::CensusReport& rep, const std::string& out_path) {
    const std::string json = opp::census_report_json(rep);
    if (out_path.empty()) {
        std::cout << json;
        return;
    }
    fs::path jp(out_path);
    std::ofstream jf(jp);
    if (!jf) throw std::runtime_error("cannot write " + out_path);
    jf << json;
    fs::path cp(jp);
    cp.replace_extension(".csv");
    std::ofstream cf(cp);
    if (!cf) throw std::runtime_error("cannot write " + cp.string());
    cf << opp::census_report_csv(rep);
    std::cout << "report: " << jp.string() << "\n";
    std::cout << "table:  " << cp.string() << "\n";
}

int exit_code_for(const opp::CensusReport& rep) {
    if (rep.violation_exit()) return kExitViolation;
    if (rep.partial) return kExitBudget;
    return kExitPass;
}

int cmd_build(const std::string& spec, const std::string& cache_dir) {
    GeometryDesc d = opp::parse_geometry(spec);
    opp::Geometry g = opp::build_geometry(d);
    if (!cache_dir.empty()) {
        fs::create_directories(cache_dir);
        opp::save_geometry(g, (fs::path(cache_dir) / opp::cache_file_name(d)).string());
    }
    std::cout << opp::to_string(d) << ": " << g.g.vertices.size() << " vertices, "
              << g.g.lines.size() << " lines of size " << g.g.line_size << ", "
              << g.opp.num_objects() << " opposite-type objects";
    if (g.polar)
        std::cout << ", ambient order (" << g.polar->s() << "," << g.polar->t() << ")";
    std::cout << "\n";
    if (!cache_dir.empty())
        std::cout << "cached: " << opp::cache_file_name(d) << "\n";
    return kExitPass;
}

int cmd_census(const GeometryDesc& d, const opp::CensusConfig& cfg,
               const std::string& cache_dir, const std::string& out_path) {
    opp::Geometry g = opp::build_geometry_cached(d, cache_dir);
    opp::CensusReport rep = opp::run_census(g, cfg);
    write_reports(rep, out_path);
    return exit_code_for(rep);
}

int cmd_classify(const GeometryDesc& d, std::vector<std::uint32_t> members,
                 const std::string& cache_dir) {
    opp::Geometry g = opp::build_geometry_cached(d, cache_dir);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (std::uint32_t v : members)
        if (v >= g.g.vertices.size())
            throw CLI::ValidationError("vertex index " + std::to_string(v) + " out of range");
    if (members.size() < 2) throw CLI::ValidationError("need at least two distinct vertices");

    opp::Bitset surv(g.opp.num_objects());
    surv.set_all();
    for (std::uint32_t v : members) surv &= g.opp.opp[v];
    const bool blocks = surv.none();

    opp::Classifier cls(g);
    opp::ClassifyResult res = cls.classify(members);
    std::cout << "members:";
    for (std::uint32_t v : members) std::cout << ' ' << v;
    std::cout << "\ncommon_opposites: " << surv.count() << "\n";
    std::cout << "family: " << opp::family_name(res.family) << "\n";
    if (res.subgq_order)
        std::cout << "subgq_order: (" << res.subgq_order->first << ","
                  << res.subgq_order->second << ")\n";
    std::cout << "geometric_line: " << (cls.is_geometric_line(members) ? "true" : "false")
              << "\n";
    return blocks && res.family != opp::WitnessFamily::Unclassified ? kExitPass
                                                                    : kExitViolation;
}

int cmd_verify_suite(const std::string& manifest_path, const std::string& cache_dir,
                     unsigned jobs) {
    std::ifstream in(manifest_path);
    if (!in) {
        std::cerr << "cannot open manifest " << manifest_path << "\n";
        return kExitUsage;
    }
    nlohmann::json manifest;
    try {
        in >> manifest;
    } catch (const std::exception& e) {
        std::cerr << "manifest parse error: " << e.what() << "\n";
        return kExitUsage;
    }
    const auto instances = manifest.value("instances", nlohmann::json::array());
    int failures = 0;
    std::size_t idx = 0;
    for (const auto& inst : instances) {
        ++idx;
        const std::string spec = inst.at("geometry").get<std::string>();
        std::ostringstream label;
        label << "[" << idx << "/" << instances.size() << "] " << spec;
        try {
            opp::CensusConfig cfg;
            cfg.m = inst.at("size").get<unsigned>();
            cfg.jobs = jobs;
            cfg.restrict_first = inst.value("restricted", false);
            cfg.check_geometric = inst.value("check_theorem_b", false);
            opp::Geometry g =
                opp::build_geometry_cached(opp::parse_geometry(spec), cache_dir);
            opp::CensusReport rep = opp::run_census(g, cfg);

            std::vector<std::string> wrong;
            if (rep.violation_exit()) {
                wrong.push_back(!rep.minimality_ok          ? "minimality violated"
                                : !rep.classification_complete ? "unclassified witnesses"
                                                               : "geometric-line mismatch");
            }
            const auto expected = inst.value("families", nlohmann::json::object());
            for (auto it = expected.begin(); it != expected.end(); ++it) {
                const std::uint64_t want = it.value().get<std::uint64_t>();
                std::uint64_t got = 0;
                for (const auto& f : rep.families)
                    if (it.key() == opp::family_name(f.family)) got = f.predicted_total;
                if (got != want)
                    wrong.push_back(it.key() + ": expected " + std::to_string(want) +
                                    ", found " + std::to_string(got));
            }
            for (const auto& f : rep.families) {
                const std::string name = opp::family_name(f.family);
                if (f.count != 0 && !expected.contains(name))
                    wrong.push_back("unexpected family " + name + " (" +
                                    std::to_string(f.predicted_total) + ")");
            }
            if (wrong.empty()) {
                std::cout << label.str() << " size " << cfg.m << ": pass ("
                          << rep.num_blockers << " witnesses)\n";
            } else {
                ++failures;
                std::cout << label.str() << " size " << cfg.m << ": FAIL\n";
                for (const auto& w : wrong) std::cout << "    " << w << "\n";
            }
        } catch (const std::exception& e) {
            ++failures;
            std::cout << label.str() << ": FAIL (" << e.what() << ")\n";
        }
    }
    std::cout << instances.size() - failures << "/" << instances.size() << " instances pass\n";
    return failures == 0 ? kExitPass : kExitViolation;
}

int cmd_cache_ls(const std::string& cache_dir) {
    if (cache_dir.empty()) {
        std::cerr << "no cache directory (set --cache or OPPCENSUS_CACHE)\n";
        return kExitUsage;
    }
    for (const auto& e : opp::list_cache(cache_dir))
        std::cout << e.file << "\t" << e.bytes << "\t" << e.desc << "\n";
    return kExitPass;
}

int cmd_cache_rm(const std::string& cache_dir, const std::string& spec, bool all) {
    if (cache_dir.empty()) {
        std::cerr << "no cache directory (set --cache or OPPCENSUS_CACHE)\n";
        return kExitUsage;
    }
    if (all) {
        for (const auto& e : opp::list_cache(cache_dir))
            fs::remove(fs::path(cache_dir) / e.file);
        return kExitPass;
    }
    const fs::path file = fs::path(cache_dir) / opp::cache_file_name(opp::parse_geometry(spec));
    if (!fs::remove(file)) {
        std::cerr << "no cache entry " << file.string() << "\n";
        return kExitViolation;
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"census of minimal no-common-opposite vertex sets in classical geometries"};
    app.require_subcommand(1);
    std::string cache_dir = default_cache_dir();
    app.add_option("--cache", cache_dir, "geometry cache directory (env OPPCENSUS_CACHE)");

    std::string spec, out_path, manifest_path, rm_spec;
    int type_flag = -1;
    unsigned size = 0, jobs = 0;
    std::uint64_t witness_cap = 64;
    double time_budget = 0;
    bool check_tb = false, restricted = false, rm_all = false;
    std::vector<std::uint32_t> members;

    auto* build = app.add_subcommand("build", "build a geometry and cache it");
    build->add_option("spec", spec, "geometry, e.g. \"W(3,2)\" or \"H(3,4) i=2\"")->required();

    auto* census = app.add_subcommand("census", "run the exhaustive census");
    census->add_option("spec", spec)->required();
    census->add_option("--type", type_flag, "vertex type index i");
    census->add_option("--size,-m", size, "witness set size m")->required();
    census->add_option("--jobs", jobs, "worker threads (0: hardware)");
    census->add_option("--witness-cap", witness_cap, "samples kept per family");
    census->add_flag("--check-theorem-b", check_tb, "run the geometric-line pass");
    census->add_flag("--restricted", restricted,
                     "fix vertex 0 as first member and scale counts by V/m "
                     "(operator asserts vertex transitivity)");
    census->add_option("--time-budget", time_budget, "wall-clock limit in seconds");
    census->add_option("--out", out_path, "JSON report path (CSV written alongside)");

    auto* classify = app.add_subcommand("classify", "classify one vertex set");
    classify->add_option("spec", spec)->required();
    classify->add_option("--type", type_flag, "vertex type index i");
    classify->add_option("--members", members, "vertex indices")->required()->delimiter(',');

    auto* verify = app.add_subcommand("verify-suite", "run a manifest of expected censuses");
    verify->add_option("manifest", manifest_path, "JSON manifest path")->required();
    verify->add_option("--jobs", jobs, "worker threads (0: hardware)");

    auto* cache = app.add_subcommand("cache", "manage the geometry cache");
    cache->require_subcommand(1);
    auto* cache_ls = cache->add_subcommand("ls", "list cache entries");
    auto* cache_rm = cache->add_subcommand("rm", "remove cache entries");
    cache_rm->add_option("spec", rm_spec, "geometry whose entry to drop");
    cache_rm->add_flag("--all", rm_all, "drop every entry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (build->parsed()) return cmd_build(spec, cache_dir);
        if (census->parsed()) {
            opp::CensusConfig cfg;
            cfg.m = size;
            cfg.jobs = jobs;
            cfg.witness_cap = witness_cap;
            cfg.time_budget = time_budget;
            cfg.restrict_first = restricted;
            cfg.check_geometric = check_tb;
            return cmd_census(resolve_desc(spec, type_flag), cfg, cache_dir, out_path);
        }
        if (classify->parsed())
            return cmd_classify(resolve_desc(spec, type_flag), members, cache_dir);
        if (verify->parsed()) return cmd_verify_suite(manifest_path, cache_dir, jobs);
        if (cache_ls->parsed()) return cmd_cache_ls(cache_dir);
        if (cache_rm->parsed()) {
            if (rm_all == rm_spec.empty())
                return cmd_cache_rm(cache_dir, rm_spec, rm_all);
            std::cerr << "cache rm: give a geometry or --all\n";
            return kExitUsage;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
