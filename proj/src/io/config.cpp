#include "asmbench/io/config.hpp"

#include "asmbench/core/errors.hpp"
#include "asmbench/uq/sampling.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace asmbench::io {

using nlohmann::json;

namespace {

void allow_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> keys) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (auto k : keys) ok = ok || it.key() == k;
        if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    return v.get<double>();
}

std::size_t count(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(where + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

std::string text(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + ": expected a string");
    return v.get<std::string>();
}

template <typename Names, typename Setter>
void scalars(const json& obj, const std::string& where, const Names& names, Setter set) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(names.begin(), names.end(), it.key()) == names.end())
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
        set(it.key(), number(it.value(), where + "." + it.key()));
    }
}

template <std::size_t N>
void component_vector(const json& v, const std::string& where, std::array<double, N>& out) {
    const auto cmps = core::ComponentSet::asm1();
    if (v.is_array()) {
        if (v.size() != N) throw ConfigError(where + ": expected " + std::to_string(N) + " values");
        for (std::size_t i = 0; i < N; ++i) out[i] = number(v[i], where);
        return;
    }
    if (!v.is_object()) throw ConfigError(where + ": expected an array or an object keyed by component id");
    for (auto it = v.begin(); it != v.end(); ++it) {
        const auto idx = cmps.find(it.key());
        if (!idx) throw ConfigError(where + ": unknown component '" + it.key() + "'");
        out[*idx] = number(it.value(), where + "." + it.key());
    }
}

void parse_bsm1(const json& j, RunConfig& c) {
    if (!j.is_object()) throw ConfigError("bsm1: expected an object");
    auto& s = c.scenario.settings;
    const auto& names = flowsheet::BSM1Settings::scalar_names();
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& k = it.key();
        const std::string where = "bsm1." + k;
        if (k == "influent") component_vector(it.value(), where, s.influent);
        else if (k == "reactor_init") component_vector(it.value(), where, s.reactor_init);
        else if (k == "clarifier_tss_init") {
            if (!it.value().is_array()) throw ConfigError(where + ": expected an array");
            s.clarifier_tss_init.clear();
            for (const auto& v : it.value()) s.clarifier_tss_init.push_back(number(v, where));
        } else if (std::find(names.begin(), names.end(), k) != names.end()) {
            s.at(k) = number(it.value(), where);
        } else {
            throw ConfigError("bsm1: unknown key '" + k + "'");
        }
    }
}

void parse_clarifier(const json& j, RunConfig& c) {
    auto& g = c.scenario.settings.clarifier;
    allow_keys(j, "clarifier", {"height", "area", "n_layers", "feed_layer"});
    if (j.contains("height")) g.height = number(j["height"], "clarifier.height");
    if (j.contains("area")) g.area = number(j["area"], "clarifier.area");
    if (j.contains("n_layers")) g.n_layers = count(j["n_layers"], "clarifier.n_layers");
    if (j.contains("feed_layer")) g.feed_layer = count(j["feed_layer"], "clarifier.feed_layer");
}

void parse_settling(const json& j, RunConfig& c) {
    auto& p = c.scenario.settings.settling;
    static const std::array<std::string_view, 6> names{"v0", "v0_prime", "r_h", "r_p", "f_ns", "X_t"};
    scalars(j, "settling", names, [&](const std::string& k, double v) {
        if (k == "v0") p.v0 = v;
        else if (k == "v0_prime") p.v0_prime = v;
        else if (k == "r_h") p.r_h = v;
        else if (k == "r_p") p.r_p = v;
        else if (k == "f_ns") p.f_ns = v;
        else p.X_t = v;
    });
}

void parse_solver(const json& j, RunConfig& c) {
    auto& st = c.scenario.steady;
    allow_keys(j, "solver", {"rtol", "atol", "initial_step", "max_step", "method", "tol_ss", "t_min", "t_max"});
    if (j.contains("rtol")) st.integrator.rtol = number(j["rtol"], "solver.rtol");
    if (j.contains("atol")) st.integrator.atol = number(j["atol"], "solver.atol");
    if (j.contains("initial_step")) st.integrator.initial_step = number(j["initial_step"], "solver.initial_step");
    if (j.contains("max_step")) st.integrator.max_step = number(j["max_step"], "solver.max_step");
    if (j.contains("method")) {
        const auto m = text(j["method"], "solver.method");
        if (m == "extrapolation") st.integrator.method = flowsheet::StiffMethod::extrapolation;
        else if (m == "bdf") st.integrator.method = flowsheet::StiffMethod::bdf;
        else throw ConfigError("solver.method: expected 'extrapolation' or 'bdf'");
    }
    if (j.contains("tol_ss")) st.tol_ss = number(j["tol_ss"], "solver.tol_ss");
    if (j.contains("t_min")) st.t_min = number(j["t_min"], "solver.t_min");
    if (j.contains("t_max")) st.t_max = number(j["t_max"], "solver.t_max");
}

void parse_run(const json& j, RunConfig& c) {
    auto& r = c.run;
    allow_keys(j, "run", {"seed", "samples", "sampling", "n_trajectory", "levels", "bootstrap", "t_end",
                          "output_interval", "workers", "out", "max_failure_fraction"});
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
            throw ConfigError("run.seed: expected a non-negative integer");
        r.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("samples")) r.samples = count(j["samples"], "run.samples");
    if (j.contains("sampling")) r.sampling = text(j["sampling"], "run.sampling");
    if (j.contains("n_trajectory")) r.n_trajectory = count(j["n_trajectory"], "run.n_trajectory");
    if (j.contains("levels")) r.levels = count(j["levels"], "run.levels");
    if (j.contains("bootstrap")) r.bootstrap = count(j["bootstrap"], "run.bootstrap");
    if (j.contains("t_end")) r.t_end = number(j["t_end"], "run.t_end");
    if (j.contains("output_interval")) r.output_interval = number(j["output_interval"], "run.output_interval");
    if (j.contains("workers")) r.workers = static_cast<unsigned>(count(j["workers"], "run.workers"));
    if (j.contains("out")) r.out = text(j["out"], "run.out");
    if (j.contains("max_failure_fraction"))
        r.max_failure_fraction = number(j["max_failure_fraction"], "run.max_failure_fraction");
}

void parse_parameters(const json& j, RunConfig& c) {
    if (!j.is_array()) throw ConfigError("parameters: expected an array");
    c.parameters.clear();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& p = j[i];
        const std::string where = "parameters[" + std::to_string(i) + "]";
        allow_keys(p, where, {"name", "kind", "min", "max", "mode", "baseline"});
        for (auto k : {"name", "kind", "min", "max", "baseline"})
            if (!p.contains(k)) throw ConfigError(where + ": missing '" + k + "'");
        uq::DistributionSpec s;
        s.name = text(p["name"], where + ".name");
        s.kind = uq::parse_distribution_kind(text(p["kind"], where + ".kind"));
        s.min = number(p["min"], where + ".min");
        s.max = number(p["max"], where + ".max");
        s.baseline = number(p["baseline"], where + ".baseline");
        if (s.kind == uq::DistributionKind::triangular) {
            if (!p.contains("mode")) throw ConfigError(where + ": triangular needs 'mode'");
            s.mode = number(p["mode"], where + ".mode");
        } else {
            if (p.contains("mode")) throw ConfigError(where + ": 'mode' applies to triangular only");
            s.mode = 0.5 * (s.min + s.max);
        }
        s.validate();
        c.parameters.push_back(std::move(s));
    }
}

void parse_filters(const json& j, RunConfig& c) {
    if (!j.is_array()) throw ConfigError("filters: expected an array");
    c.filters.clear();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "filters[" + std::to_string(i) + "]";
        allow_keys(j[i], where, {"metric", "threshold"});
        if (!j[i].contains("metric") || !j[i].contains("threshold"))
            throw ConfigError(where + ": needs 'metric' and 'threshold'");
        c.filters.push_back({text(j[i]["metric"], where + ".metric"), number(j[i]["threshold"], where + ".threshold")});
    }
}

SweepAxis parse_axis(const json& j, const std::string& where) {
    allow_keys(j, where, {"name", "min", "max", "n"});
    for (auto k : {"name", "min", "max", "n"})
        if (!j.contains(k)) throw ConfigError(where + ": missing '" + k + "'");
    return {text(j["name"], where + ".name"), number(j["min"], where + ".min"), number(j["max"], where + ".max"),
            count(j["n"], where + ".n")};
}

void parse_sweep(const json& j, RunConfig& c) {
    allow_keys(j, "sweep", {"x", "y"});
    if (j.contains("x")) c.sweep_x = parse_axis(j["x"], "sweep.x");
    if (j.contains("y")) c.sweep_y = parse_axis(j["y"], "sweep.y");
}

void parse_indicators(const json& j, RunConfig& c) {
    if (!j.is_array()) throw ConfigError("impact_indicators: expected an array");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "impact_indicators[" + std::to_string(i) + "]";
        allow_keys(j[i], where, {"id", "unit"});
        if (!j[i].contains("id")) throw ConfigError(where + ": missing 'id'");
        c.accounting.catalog.add_indicator(
            {text(j[i]["id"], where + ".id"), j[i].contains("unit") ? text(j[i]["unit"], where + ".unit") : ""});
    }
}

void parse_items(const json& j, RunConfig& c) {
    if (!j.is_array()) throw ConfigError("impact_items: expected an array");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "impact_items[" + std::to_string(i) + "]";
        allow_keys(j[i], where, {"id", "functional_unit", "cf", "offset", "price"});
        for (auto k : {"id", "functional_unit", "cf"})
            if (!j[i].contains(k)) throw ConfigError(where + ": missing '" + k + "'");
        accounting::ImpactItem item;
        item.id = text(j[i]["id"], where + ".id");
        item.functional_unit = text(j[i]["functional_unit"], where + ".functional_unit");
        if (!j[i]["cf"].is_object()) throw ConfigError(where + ".cf: expected an object");
        for (auto it = j[i]["cf"].begin(); it != j[i]["cf"].end(); ++it)
            item.factors[it.key()] = number(it.value(), where + ".cf." + it.key());
        if (j[i].contains("offset")) {
            if (!j[i]["offset"].is_boolean()) throw ConfigError(where + ".offset: expected a boolean");
            item.offset = j[i]["offset"].get<bool>();
        }
        if (j[i].contains("price")) c.accounting.prices[item.id] = number(j[i]["price"], where + ".price");
        c.accounting.catalog.add_item(std::move(item));
    }
}

std::vector<accounting::DailyAmount> daily_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array");
    std::vector<accounting::DailyAmount> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        allow_keys(j[i], w, {"id", "per_day"});
        if (!j[i].contains("id") || !j[i].contains("per_day")) throw ConfigError(w + ": needs 'id' and 'per_day'");
        out.push_back({text(j[i]["id"], w + ".id"), number(j[i]["per_day"], w + ".per_day")});
    }
    return out;
}

void parse_tea(const json& j, RunConfig& c) {
    auto& t = c.accounting.tea;
    allow_keys(j, "tea", {"discount_rate", "horizon", "income_tax", "population", "capital", "opex", "revenue",
                          "lca_horizon"});
    if (j.contains("discount_rate")) t.discount_rate = number(j["discount_rate"], "tea.discount_rate");
    if (j.contains("horizon")) t.horizon = number(j["horizon"], "tea.horizon");
    if (j.contains("income_tax")) t.income_tax = number(j["income_tax"], "tea.income_tax");
    if (j.contains("population")) t.population = number(j["population"], "tea.population");
    if (j.contains("lca_horizon")) c.accounting.lca_horizon = number(j["lca_horizon"], "tea.lca_horizon");
    if (j.contains("capital")) {
        if (!j["capital"].is_array()) throw ConfigError("tea.capital: expected an array");
        for (std::size_t i = 0; i < j["capital"].size(); ++i) {
            const auto& e = j["capital"][i];
            const std::string w = "tea.capital[" + std::to_string(i) + "]";
            allow_keys(e, w, {"id", "cost", "lifetime"});
            for (auto k : {"id", "cost", "lifetime"})
                if (!e.contains(k)) throw ConfigError(w + ": missing '" + k + "'");
            t.capital.push_back({text(e["id"], w + ".id"), number(e["cost"], w + ".cost"), number(e["lifetime"], w + ".lifetime")});
        }
    }
    if (j.contains("opex")) t.opex = daily_list(j["opex"], "tea.opex");
    if (j.contains("revenue")) t.revenue = daily_list(j["revenue"], "tea.revenue");
}

}  // namespace

void RunConfig::validate() const {
    scenario.settings.validate();
    scenario.asm1.validate();
    scenario.steady.integrator.validate();
    if (!(scenario.steady.tol_ss > 0.0)) throw ConfigError("solver.tol_ss must be > 0");
    if (!(scenario.steady.t_min >= 0.0 && scenario.steady.t_max >= scenario.steady.t_min))
        throw ConfigError("solver: need 0 <= t_min <= t_max");
    uq::validate_specs(parameters);
    for (const auto& p : parameters) (void)scenario.get(p.name);
    if (run.sampling != "lhs" && run.sampling != "random") throw ConfigError("run.sampling must be 'lhs' or 'random'");
    if (run.samples == 0) throw ConfigError("run.samples must be >= 1");
    if (!(run.t_end >= 0.0)) throw ConfigError("run.t_end must be >= 0");
    if (!(run.output_interval > 0.0)) throw ConfigError("run.output_interval must be > 0");
    if (!(run.max_failure_fraction >= 0.0 && run.max_failure_fraction <= 1.0))
        throw ConfigError("run.max_failure_fraction must lie in [0, 1]");
    for (const auto& f : filters) {
        const auto& names = flowsheet::EffluentMetrics::names();
        if (std::find(names.begin(), names.end(), f.metric) == names.end())
            throw ConfigError("filters: unknown metric '" + f.metric + "'");
    }
    for (const auto* a : {&sweep_x, &sweep_y}) {
        if (a->n == 0) throw ConfigError("sweep: axis '" + a->name + "' needs n >= 1");
        bool found = false;
        for (const auto& p : parameters) found = found || p.name == a->name;
        if (!found) throw ConfigError("sweep: '" + a->name + "' is not an uncertain parameter");
    }
    if (sweep_x.name == sweep_y.name) throw ConfigError("sweep: the two axes must differ");
    accounting.tea.validate();
    if (!(accounting.lca_horizon > 0.0)) throw ConfigError("tea.lca_horizon must be > 0");
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    allow_keys(j, "config", {"bsm1", "clarifier", "settling", "asm1", "solver", "run", "parameters", "filters", "sweep",
                             "impact_indicators", "impact_items", "tea"});
    RunConfig c;
    if (j.contains("bsm1")) parse_bsm1(j["bsm1"], c);
    if (j.contains("clarifier")) parse_clarifier(j["clarifier"], c);
    if (j.contains("settling")) parse_settling(j["settling"], c);
    if (j.contains("asm1"))
        scalars(j["asm1"], "asm1", kinetics::ASM1ParameterSet::names(),
                [&](const std::string& k, double v) { c.scenario.asm1.at(k) = v; });
    if (j.contains("solver")) parse_solver(j["solver"], c);
    if (j.contains("run")) parse_run(j["run"], c);
    if (j.contains("parameters")) parse_parameters(j["parameters"], c);
    else c.parameters = uq::bsm1_parameter_specs(c.scenario.settings);
    if (j.contains("filters")) parse_filters(j["filters"], c);
    if (j.contains("sweep")) parse_sweep(j["sweep"], c);
    if (j.contains("impact_indicators")) parse_indicators(j["impact_indicators"], c);
    if (j.contains("impact_items")) parse_items(j["impact_items"], c);
    if (j.contains("tea")) parse_tea(j["tea"], c);
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace asmbench::io
