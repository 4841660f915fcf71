#include "exvib/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace exvib {

namespace {

using json = nlohmann::ordered_json;

// field access that reports the offending key on any failure
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError("config error at " + path_ + ": expected an object");
        }
    }

    const json& at(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) {
            throw ConfigError("config error: missing key '" + qualify(key) + "'");
        }
        return *it;
    }

    double number(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number()) {
            throw ConfigError("config error at " + qualify(key) + ": expected a number");
        }
        return v.get<double>();
    }

    int integer(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number_integer()) {
            throw ConfigError("config error at " + qualify(key) + ": expected an integer");
        }
        return v.get<int>();
    }

    bool boolean(const std::string& key) {
        const json& v = at(key);
        if (!v.is_boolean()) {
            throw ConfigError("config error at " + qualify(key) + ": expected a boolean");
        }
        return v.get<bool>();
    }

    std::string text(const std::string& key) {
        const json& v = at(key);
        if (!v.is_string()) {
            throw ConfigError("config error at " + qualify(key) + ": expected a string");
        }
        return v.get<std::string>();
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    void reject_unknown() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.contains(it.key())) {
                throw ConfigError("config error: unknown key '" + qualify(it.key()) + "'");
            }
        }
    }

private:
    std::string qualify(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError("config error: " + message);
}

} // namespace

void RunConfig::validate() const {
    try {
        dimer.validate();
        bath.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    require(!scenario.empty(), "scenario label must not be empty");
    require(initial.purity_r >= 0.5 && initial.purity_r <= 1.0,
            "initial.purity_r must lie in [1/2, 1]");
    require(initial.temperature == bath.temperature,
            "initial state temperature must match bath.temperature");
    require(depth >= 0, "hierarchy.depth must be >= 0");
    require(integrator.rel_tol > 0.0, "integrator.rel_tol must be > 0");
    require(integrator.abs_tol > 0.0, "integrator.abs_tol must be > 0");
    require(integrator.sample_interval_ps > 0.0,
            "integrator.sample_interval_ps must be > 0");
    require(integrator.final_time_ps > 0.0, "integrator.final_time_ps must be > 0");
    require(integrator.final_time_ps >= integrator.sample_interval_ps,
            "integrator.final_time_ps must cover at least one sample interval");
    require(output.tau_ps > 0.0, "output.tau_ps must be > 0");
    require(output.tau_ps <= integrator.final_time_ps * (1.0 + 1e-9),
            "output.tau_ps must not exceed integrator.final_time_ps");
}

RunConfig parse_config(const std::string& document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: malformed document: ") + e.what());
    }

    Section root(j, "");
    RunConfig cfg;
    cfg.scenario = root.text("scenario");

    {
        Section s(root.at("dimer"), "dimer");
        cfg.dimer.epsilon_site1 = s.number("epsilon_1");
        cfg.dimer.epsilon_site2 = s.number("epsilon_2");
        cfg.dimer.coupling = s.number("coupling_v");
        cfg.dimer.omega_vib = s.number("omega_vib");
        cfg.dimer.huang_rhys = s.number("huang_rhys");
        cfg.dimer.fock_cutoff = s.integer("fock_cutoff");
        s.reject_unknown();
    }
    {
        Section s(root.at("bath"), "bath");
        cfg.bath.lambda = s.number("lambda");
        cfg.bath.omega_c = s.number("omega_c");
        cfg.bath.temperature = s.number("temperature");
        s.reject_unknown();
    }
    {
        Section s(root.at("initial"), "initial");
        cfg.initial.purity_r = s.number("purity_r");
        cfg.initial.temperature = cfg.bath.temperature;
        s.reject_unknown();
    }
    {
        Section s(root.at("hierarchy"), "hierarchy");
        cfg.depth = s.integer("depth");
        cfg.bath.matsubara_k = s.integer("matsubara");
        s.reject_unknown();
    }
    {
        Section s(root.at("integrator"), "integrator");
        cfg.integrator.rel_tol = s.number("rel_tol");
        cfg.integrator.abs_tol = s.number("abs_tol");
        cfg.integrator.sample_interval_ps = s.number("sample_interval_ps");
        cfg.integrator.final_time_ps = s.number("final_time_ps");
        s.reject_unknown();
    }
    if (root.has("output")) {
        Section s(root.at("output"), "output");
        if (s.has("tau_ps")) cfg.output.tau_ps = s.number("tau_ps");
        if (s.has("mode_removed")) cfg.output.mode_removed = s.boolean("mode_removed");
        s.reject_unknown();
    }
    root.reject_unknown();

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config error: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    j["scenario"] = cfg.scenario;
    j["dimer"] = {{"epsilon_1", cfg.dimer.epsilon_site1},
                  {"epsilon_2", cfg.dimer.epsilon_site2},
                  {"coupling_v", cfg.dimer.coupling},
                  {"omega_vib", cfg.dimer.omega_vib},
                  {"huang_rhys", cfg.dimer.huang_rhys},
                  {"fock_cutoff", cfg.dimer.fock_cutoff}};
    j["bath"] = {{"lambda", cfg.bath.lambda},
                 {"omega_c", cfg.bath.omega_c},
                 {"temperature", cfg.bath.temperature}};
    j["initial"] = {{"purity_r", cfg.initial.purity_r}};
    j["hierarchy"] = {{"depth", cfg.depth}, {"matsubara", cfg.bath.matsubara_k}};
    j["integrator"] = {{"rel_tol", cfg.integrator.rel_tol},
                       {"abs_tol", cfg.integrator.abs_tol},
                       {"sample_interval_ps", cfg.integrator.sample_interval_ps},
                       {"final_time_ps", cfg.integrator.final_time_ps}};
    j["output"] = {{"tau_ps", cfg.output.tau_ps},
                   {"mode_removed", cfg.output.mode_removed}};
    return j.dump(2) + "\n";
}

} // namespace exvib
