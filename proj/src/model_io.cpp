#include "deflab/model_io.hpp"

#include <json.hpp>

namespace deflab {

using nlohmann::json;

namespace {

json time_to_json(Time t) {
    if (t == kInf) return json("inf");
    return json(t);
}

Time time_from_json(const json& j) {
    if (j.is_string()) {
        require(j.get<std::string>() == "inf", ErrorKind::BadInput, "bad time literal");
        return kInf;
    }
    require(j.is_number_integer(), ErrorKind::BadInput, "time must be integer or \"inf\"");
    return j.get<Time>();
}

json proc_to_json(const Proc& p) {
    json rows = json::array();
    for (const auto& row : p.v) {
        json r = json::array();
        for (const Rat& q : row) r.push_back(rat_str(q));
        rows.push_back(std::move(r));
    }
    return rows;
}

Proc proc_from_json(const json& j, int T, int n) {
    require(j.is_array() && static_cast<int>(j.size()) == T + 1, ErrorKind::BadInput,
            "process table must have one row per time");
    Proc p;
    p.v.assign(T + 1, std::vector<Rat>(n));
    for (int t = 0; t <= T; ++t) {
        require(static_cast<int>(j[t].size()) == n, ErrorKind::BadInput,
                "process row has wrong width");
        for (int w = 0; w < n; ++w) p.v[t][w] = rat_parse(j[t][w].get<std::string>());
    }
    return p;
}

}  // namespace

ModelFile model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::BadInput, std::string("malformed JSON: ") + e.what());
    }
    std::vector<std::string> outcomes = j.at("outcomes").get<std::vector<std::string>>();
    std::vector<Rat> probs;
    for (const auto& p : j.at("probs")) probs.push_back(rat_parse(p.get<std::string>()));
    int horizon = j.at("horizon").get<int>();
    std::vector<Partition> filtration;
    for (const auto& part : j.at("filtration")) {
        Partition p;
        for (const auto& blk : part) p.push_back(blk.get<Block>());
        filtration.push_back(std::move(p));
    }

    ModelFile mf;
    mf.model.space = build_space(std::move(outcomes), std::move(probs), horizon,
                                 std::move(filtration));
    const int n = mf.model.space.n();
    require(j.contains("times") && j["times"].contains("tau"), ErrorKind::BadInput,
            "model must carry times.tau");
    for (const auto& [name, arr] : j["times"].items()) {
        RTime rt;
        for (const auto& v : arr) rt.t.push_back(time_from_json(v));
        require(static_cast<int>(rt.t.size()) == n, ErrorKind::BadInput, "time vector width");
        for (Time t : rt.t)
            require(t == kInf || (t >= 0 && t <= horizon), ErrorKind::BadInput,
                    "time value outside the grid");
        if (name == "tau")
            mf.model.tau = rt;
        else
            mf.extra_times[name] = rt;
    }
    if (j.contains("processes"))
        for (const auto& [name, table] : j["processes"].items())
            mf.processes[name] = proc_from_json(table, horizon, n);
    mf.model.id = j.value("id", "model");
    return mf;
}

std::string model_to_json(const ModelFile& mf, int indent) {
    const FilteredSpace& s = mf.model.space;
    json j;
    j["id"] = mf.model.id;
    j["outcomes"] = s.outcomes;
    json probs = json::array();
    for (const Rat& p : s.prob) probs.push_back(rat_str(p));
    j["probs"] = std::move(probs);
    j["horizon"] = s.horizon;
    json filt = json::array();
    for (const Partition& part : s.partitions) {
        json pj = json::array();
        for (const Block& blk : part) pj.push_back(blk);
        filt.push_back(std::move(pj));
    }
    j["filtration"] = std::move(filt);
    json times;
    json tau = json::array();
    for (Time t : mf.model.tau.t) tau.push_back(time_to_json(t));
    times["tau"] = std::move(tau);
    for (const auto& [name, rt] : mf.extra_times) {
        json arr = json::array();
        for (Time t : rt.t) arr.push_back(time_to_json(t));
        times[name] = std::move(arr);
    }
    j["times"] = std::move(times);
    if (!mf.processes.empty()) {
        json procs;
        for (const auto& [name, p] : mf.processes) procs[name] = proc_to_json(p);
        j["processes"] = std::move(procs);
    }
    return j.dump(indent);
}

std::string certificate_to_json(const FilteredSpace&, const Certificate& cert, int indent) {
    json j;
    j["feasible"] = cert.feasible;
    j["slack"] = cert.slack ? json(rat_str(*cert.slack)) : json(nullptr);
    if (cert.feasible) {
        if (cert.M.T() >= 0) j["M"] = proc_to_json(cert.M);
        if (cert.z.T() >= 0) j["z"] = proc_to_json(cert.z);
        j["Phi"] = proc_to_json(cert.Phi);
    }
    return j.dump(indent);
}

std::string bundle_to_json(const FilteredSpace& s, const Analysis& an, int indent) {
    json procs;
    auto put = [&](const char* name, const Proc& p) { procs[name] = proc_to_json(p); };
    put("Z", an.bundle.Z);
    put("Ztilde", an.bundle.Ztilde);
    put("a", an.bundle.a);
    put("A", an.bundle.A);
    put("m", an.bundle.m);
    put("mdot", an.bundle.mdot);
    put("gamma", an.bundle.gamma);
    put("D", an.md.D);
    put("Lhat", an.md.Lhat);
    put("n", an.em.n);
    put("ntilde", an.em.n_tilde);
    {
        json rows = json::array();
        for (int t = 0; t <= s.T(); ++t) {
            json r = json::array();
            for (int w = 0; w < s.n(); ++w)
                r.push_back(an.md.C_set.contains(t, w) ? json(rat_str(an.md.L.v[t][w]))
                                                       : json(nullptr));
            rows.push_back(std::move(r));
        }
        procs["L"] = std::move(rows);
    }
    json times;
    auto put_time = [&](const char* name, const RTime& rt) {
        json arr = json::array();
        for (Time t : rt.t) arr.push_back(time_to_json(t));
        times[name] = std::move(arr);
    };
    put_time("zeta", an.vt.zeta);
    put_time("eta", an.vt.eta);
    put_time("eta_dot", an.vt.eta_dot);
    put_time("eta_ddot", an.vt.eta_ddot);
    put_time("eta_tilde", an.vt.eta_tilde);
    json j;
    j["processes"] = std::move(procs);
    j["times"] = std::move(times);
    // Recorded per model, never asserted: whether eta happens to be
    // announced one step ahead on this instance.
    j["eta_predictable"] = is_predictable_time(s, an.vt.eta);
    return j.dump(indent);
}

}  // namespace deflab
