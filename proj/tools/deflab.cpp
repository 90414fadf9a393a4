// deflab: exact verification harness for default-time filtration models.
//
// Verbs:
//   gen      write a seeded model (random | density | cox | pathological:CLASS)
//   verify   run a property suite over fixtures + seeded models
//   inspect  print derived objects of a model file as exact rationals
//   infer    recover the small filtration from (G, tau) via the kernel family
//   report   pretty-print a report file and exit 1 when it carries a failure
//
// Exit codes: 0 pass, 1 counterexample found, 2 input error, 64 usage.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "deflab/deflator.hpp"
#include "deflab/inference.hpp"
#include "deflab/model_io.hpp"
#include "deflab/suite.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitInput = 2;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) deflab::fail(deflab::ErrorKind::BadInput, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) deflab::fail(deflab::ErrorKind::BadInput, "cannot write " + out_path);
    out << text << "\n";
}

int cmd_gen(const std::string& kind, std::uint64_t seed, const deflab::gen::GenSizes& sizes,
            const std::string& out_path) {
    deflab::Model model;
    if (kind == "random") {
        deflab::gen::Rng rng(seed);
        model = deflab::gen::gen_random_model(rng, sizes);
    } else if (kind == "density") {
        model = deflab::gen::gen_density_model(seed, sizes);
    } else if (kind == "cox") {
        model = deflab::gen::gen_cox_model(seed, sizes).model;
    } else if (kind.rfind("pathological:", 0) == 0) {
        model = deflab::gen::gen_pathological(
            seed, sizes, deflab::gen::pathology_from_name(kind.substr(13)));
    } else if (kind == "m1") {
        model = deflab::fixture_m1();
    } else if (kind == "m2") {
        model = deflab::fixture_m2();
    } else if (kind == "m3") {
        model = deflab::fixture_m3();
    } else {
        std::cerr << "unknown kind: " << kind << "\n";
        return kExitUsage;
    }
    deflab::ModelFile mf;
    mf.model = std::move(model);
    write_output(out_path, deflab::model_to_json(mf));
    return kExitPass;
}

int cmd_verify(const deflab::SuiteConfig& cfg, const std::string& out_path) {
    deflab::SuiteReport report = deflab::run_suite(cfg);
    std::string text = deflab::report_to_json(report);
    write_output(out_path, text);
    for (const auto& p : report.properties)
        std::cerr << (p.failed ? "[FAIL] " : "[ ok ] ") << p.property << "  tested=" << p.tested
                  << " passed=" << p.passed << " skipped=" << p.skipped << "\n";
    return report.all_passed() ? kExitPass : kExitCounterexample;
}

int cmd_inspect(const std::string& model_path, const std::string& what,
                const std::string& out_path) {
    deflab::ModelFile mf = deflab::model_from_json(read_file(model_path));
    const deflab::Model& m = mf.model;
    if (what == "bundle" || what == "times" || what == "decomp") {
        deflab::Analysis an = deflab::analyze(m.space, m.tau);
        write_output(out_path, deflab::bundle_to_json(m.space, an));
        return kExitPass;
    }
    if (what == "certificate") {
        deflab::EnlargedPair pair = deflab::enlarge_progressively(m.space, m.tau);
        deflab::Analysis an = deflab::analyze(m.space, m.tau);
        std::vector<deflab::Proc> X;
        auto it = mf.processes.find("X");
        X.push_back(it != mf.processes.end() ? it->second
                                             : deflab::const_proc(m.space, deflab::Rat(1)));
        deflab::Certificate cert = deflab::certificate_search(pair, an, X);
        write_output(out_path, deflab::certificate_to_json(m.space, cert));
        return kExitPass;
    }
    std::cerr << "unknown inspect target: " << what
              << " (expected bundle|times|decomp|certificate)\n";
    return kExitUsage;
}

int cmd_infer(const std::string& model_path, const std::string& out_path) {
    deflab::ModelFile mf = deflab::model_from_json(read_file(model_path));
    const deflab::Model& m = mf.model;
    deflab::EnlargedPair pair = deflab::enlarge_progressively(m.space, m.tau);
    deflab::SigmaAlg h{pair.F.partitions[pair.F.T()]};
    deflab::Kernel k = deflab::conditional_kernel(m.space, m.tau);

    nlohmann::json j;
    j["saturation"] = deflab::saturation_check(pair.G, m.tau, h);
    nlohmann::json pivots = nlohmann::json::array();
    bool recovered = false;
    for (const auto& [t, p] : k.kappa) {
        nlohmann::json pj;
        pj["pivot"] = t == deflab::kInf ? nlohmann::json("inf") : nlohmann::json(t);
        bool b1 = deflab::condB1_check(pair.G, m.tau, h, p);
        pj["condB1"] = b1;
        if (b1) {
            deflab::InferResult res =
                deflab::infer_filtration(pair.G, m.tau, h, p, &pair.F.partitions);
            pj["recovers_F"] = res.matches_reference;
            recovered |= res.matches_reference;
        }
        pivots.push_back(std::move(pj));
    }
    j["pivots"] = std::move(pivots);
    j["recovered"] = recovered;
    write_output(out_path, j.dump(2));
    return kExitPass;
}

int cmd_report(const std::string& report_path) {
    nlohmann::json j = nlohmann::json::parse(read_file(report_path));
    bool ok = j.value("all_passed", false);
    std::cout << "suite " << j.value("suite", "?") << " seed " << j.value("seed", 0)
              << " models " << j.value("models", 0) << ": "
              << (ok ? "all passed" : "FAILURES") << "\n";
    for (const auto& p : j["properties"]) {
        std::cout << "  " << (p["failed"].get<int>() ? "[FAIL]" : "[ ok ]") << " "
                  << p["property"].get<std::string>() << " tested=" << p["tested"]
                  << " skipped=" << p["skipped_preconditions"] << "\n";
        if (!p["counterexample"].is_null())
            std::cout << "         " << p["counterexample"].get<std::string>() << "\n";
    }
    return ok ? kExitPass : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification engine for default-time filtration models"};
    app.require_subcommand(1);

    std::string kind = "random", out_path, model_path, what = "bundle", report_path;
    std::uint64_t seed = 1;
    deflab::SuiteConfig cfg;
    deflab::gen::GenSizes sizes;

    CLI::App* c_gen = app.add_subcommand("gen", "generate a seeded model");
    c_gen->add_option("--kind", kind,
                      "random|density|cox|pathological:CLASS|m1|m2|m3");
    c_gen->add_option("--seed", seed);
    c_gen->add_option("--max-outcomes", sizes.max_outcomes);
    c_gen->add_option("--max-horizon", sizes.max_horizon);
    c_gen->add_option("--out", out_path);

    CLI::App* c_verify = app.add_subcommand("verify", "run a property suite");
    c_verify->add_option("--suite", cfg.suite)->check(CLI::IsMember(deflab::suite_names()));
    c_verify->add_option("--models", cfg.models);
    c_verify->add_option("--seed", cfg.seed);
    c_verify->add_option("--max-outcomes", cfg.sizes.max_outcomes);
    c_verify->add_option("--max-horizon", cfg.sizes.max_horizon);
    c_verify->add_flag("--fixtures-only", cfg.fixtures_only);
    c_verify->add_option("--out", out_path);

    CLI::App* c_inspect = app.add_subcommand("inspect", "print derived objects");
    c_inspect->add_option("model", model_path)->required();
    c_inspect->add_option("--what", what, "bundle|times|decomp|certificate");
    c_inspect->add_option("--out", out_path);

    CLI::App* c_infer = app.add_subcommand("infer", "recover F from (G, tau)");
    c_infer->add_option("model", model_path)->required();
    c_infer->add_option("--out", out_path);

    CLI::App* c_report = app.add_subcommand("report", "pretty-print a report file");
    c_report->add_option("report", report_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (c_gen->parsed()) return cmd_gen(kind, seed, sizes, out_path);
        if (c_verify->parsed()) return cmd_verify(cfg, out_path);
        if (c_inspect->parsed()) return cmd_inspect(model_path, what, out_path);
        if (c_infer->parsed()) return cmd_infer(model_path, out_path);
        if (c_report->parsed()) return cmd_report(report_path);
    } catch (const deflab::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
