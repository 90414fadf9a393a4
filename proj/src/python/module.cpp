#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deflab/deflator.hpp"
#include "deflab/generators.hpp"
#include "deflab/inference.hpp"
#include "deflab/model_io.hpp"
#include "deflab/suite.hpp"

namespace py = pybind11;
using namespace deflab;

namespace {

ModelFile load(const std::string& json_text) { return model_from_json(json_text); }

std::string fixture_json(const std::string& name) {
    ModelFile mf;
    if (name == "m1")
        mf.model = fixture_m1();
    else if (name == "m2")
        mf.model = fixture_m2();
    else if (name == "m3")
        mf.model = fixture_m3();
    else
        fail(ErrorKind::BadInput, "unknown fixture: " + name);
    return model_to_json(mf);
}

std::string analyze_json(const std::string& model_json) {
    ModelFile mf = load(model_json);
    Analysis an = analyze(mf.model.space, mf.model.tau);
    return bundle_to_json(mf.model.space, an);
}

std::string certificate_json(const std::string& model_json) {
    ModelFile mf = load(model_json);
    EnlargedPair pair = enlarge_progressively(mf.model.space, mf.model.tau);
    Analysis an = analyze(mf.model.space, mf.model.tau);
    std::vector<Proc> X;
    auto it = mf.processes.find("X");
    X.push_back(it != mf.processes.end() ? it->second
                                         : const_proc(mf.model.space, Rat(1)));
    Certificate cert = certificate_search(pair, an, X);
    return certificate_to_json(mf.model.space, cert);
}

bool g_deflator_feasible(const std::string& model_json, const std::string& process_name) {
    ModelFile mf = load(model_json);
    EnlargedPair pair = enlarge_progressively(mf.model.space, mf.model.tau);
    Proc s = mf.processes.at(process_name);
    return g_deflator_search(pair, {s}).feasible;
}

std::string generate(const std::string& kind, std::uint64_t seed, int max_outcomes,
                     int max_horizon) {
    gen::GenSizes sizes{max_outcomes, max_horizon};
    ModelFile mf;
    if (kind == "random") {
        gen::Rng rng(seed);
        mf.model = gen::gen_random_model(rng, sizes);
    } else if (kind == "density") {
        mf.model = gen::gen_density_model(seed, sizes);
    } else if (kind == "cox") {
        mf.model = gen::gen_cox_model(seed, sizes).model;
    } else if (kind.rfind("pathological:", 0) == 0) {
        mf.model = gen::gen_pathological(seed, sizes, gen::pathology_from_name(kind.substr(13)));
    } else {
        fail(ErrorKind::BadInput, "unknown generator kind: " + kind);
    }
    return model_to_json(mf);
}

std::string verify(const std::string& suite, int models, std::uint64_t seed) {
    SuiteConfig cfg;
    cfg.suite = suite;
    cfg.models = models;
    cfg.seed = seed;
    return report_to_json(run_suite(cfg));
}

std::string infer(const std::string& model_json) {
    ModelFile mf = load(model_json);
    EnlargedPair pair = enlarge_progressively(mf.model.space, mf.model.tau);
    SigmaAlg h{pair.F.partitions[pair.F.T()]};
    Kernel k = conditional_kernel(mf.model.space, mf.model.tau);
    bool recovered = false;
    for (const auto& [t, p] : k.kappa) {
        if (!condB1_check(pair.G, mf.model.tau, h, p)) continue;
        InferResult res = infer_filtration(pair.G, mf.model.tau, h, p, &pair.F.partitions);
        recovered |= res.matches_reference;
    }
    return recovered ? "recovered" : "not-recovered";
}

}  // namespace

PYBIND11_MODULE(_deflab, m) {
    m.doc() = "exact verification engine for default-time filtration models";

    m.def("fixture", &fixture_json, py::arg("name"),
          "Model JSON for a canonical fixture (m1 | m2 | m3).");
    m.def("analyze", &analyze_json, py::arg("model_json"),
          "Survival bundle, decomposition, and vanishing times as JSON.");
    m.def("certificate", &certificate_json, py::arg("model_json"),
          "Deflator-existence certificate for the process named X (default 1).");
    m.def("g_deflator_feasible", &g_deflator_feasible, py::arg("model_json"),
          py::arg("process_name"),
          "Direct G-side deflator feasibility for a stored process.");
    m.def("generate", &generate, py::arg("kind"), py::arg("seed") = 1,
          py::arg("max_outcomes") = 8, py::arg("max_horizon") = 5,
          "Seeded model generator (random | density | cox | pathological:CLASS).");
    m.def("verify", &verify, py::arg("suite"), py::arg("models") = 50, py::arg("seed") = 1,
          "Run a property suite; returns the report JSON.");
    m.def("infer", &infer, py::arg("model_json"),
          "Recover the small filtration from (G, tau) through the kernel family.");
    m.def("suites", [] { return suite_names(); }, "Names of the property suites.");

    py::register_exception<Error>(m, "DeflabError");
}
