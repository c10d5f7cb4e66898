#include "evsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string_view>

#include <nlohmann/json.hpp>

namespace evsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> keys) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (std::string_view k : keys) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) fail(path + "." + item.key(), "unknown field");
    }
}

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "must be an object");
    return j;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "must be a number");
    return j.get<double>();
}

double num_field(const json& obj, const char* key, double def, const std::string& path) {
    const json* j = find(obj, key);
    return j ? as_number(*j, path + "." + key) : def;
}

int int_field(const json& obj, const char* key, int def, const std::string& path) {
    const json* j = find(obj, key);
    if (!j) return def;
    if (!j->is_number_integer()) fail(path + "." + key, "must be an integer");
    return j->get<int>();
}

bool bool_field(const json& obj, const char* key, bool def, const std::string& path) {
    const json* j = find(obj, key);
    if (!j) return def;
    if (!j->is_boolean()) fail(path + "." + key, "must be a boolean");
    return j->get<bool>();
}

std::string str_field(const json& obj, const char* key, const std::string& def,
                      const std::string& path) {
    const json* j = find(obj, key);
    if (!j) return def;
    if (!j->is_string()) fail(path + "." + key, "must be a string");
    return j->get<std::string>();
}

std::string require_str(const json& obj, const char* key, const std::string& path) {
    const json* j = find(obj, key);
    if (!j) fail(path + "." + key, "missing required field");
    if (!j->is_string()) fail(path + "." + key, "must be a string");
    return j->get<std::string>();
}

double require_num(const json& obj, const char* key, const std::string& path) {
    const json* j = find(obj, key);
    if (!j) fail(path + "." + key, "missing required field");
    return as_number(*j, path + "." + key);
}

double default_alpha(PriceScheme kind) {
    switch (kind) {
        case PriceScheme::None: return 0.0;
        case PriceScheme::Linear: return 1.0;
        case PriceScheme::Quadratic: return 0.625;
        case PriceScheme::Exponential: return 1.4;
    }
    return 0.0;
}

PriceScheme parse_scheme(const std::string& s, const std::string& path) {
    if (s == "none") return PriceScheme::None;
    if (s == "linear") return PriceScheme::Linear;
    if (s == "quadratic") return PriceScheme::Quadratic;
    if (s == "exponential") return PriceScheme::Exponential;
    fail(path, "must be one of none, linear, quadratic, exponential (got \"" + s + "\")");
}

PriceMode parse_mode(const std::string& s, const std::string& path) {
    if (s == "step") return PriceMode::Step;
    if (s == "continuous") return PriceMode::Continuous;
    fail(path, "must be \"step\" or \"continuous\" (got \"" + s + "\")");
}

void check_finite(double v, const std::string& path) {
    if (!std::isfinite(v)) fail(path, "must be finite");
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    require_object(root, "config");
    reject_unknown(root, "config",
                   {"sim", "mobility", "demand", "choice", "pricing", "service", "reroute_max",
                    "zones", "stations", "od_rates", "metrics", "output"});

    ScenarioConfig cfg;

    if (const json* sim = find(root, "sim")) {
        require_object(*sim, "sim");
        reject_unknown(*sim, "sim", {"start_min", "end_min", "seed", "replications"});
        cfg.demand.sim_start_min = num_field(*sim, "start_min", cfg.demand.sim_start_min, "sim");
        cfg.demand.sim_end_min = num_field(*sim, "end_min", cfg.demand.sim_end_min, "sim");
        if (const json* seed = find(*sim, "seed")) {
            if (!seed->is_number_integer()) fail("sim.seed", "must be a nonnegative integer");
            if (!seed->is_number_unsigned() && seed->get<long long>() < 0) {
                fail("sim.seed", "must be a nonnegative integer");
            }
            cfg.seed = seed->get<std::uint64_t>();
        }
        cfg.replications = int_field(*sim, "replications", cfg.replications, "sim");
    }

    if (const json* mob = find(root, "mobility")) {
        require_object(*mob, "mobility");
        reject_unknown(*mob, "mobility",
                       {"speed_mph", "range_full_mi", "charge_rate_mi_per_min", "detour_max_mi"});
        cfg.mobility.speed_mph = num_field(*mob, "speed_mph", cfg.mobility.speed_mph, "mobility");
        cfg.mobility.range_full_mi =
            num_field(*mob, "range_full_mi", cfg.mobility.range_full_mi, "mobility");
        cfg.mobility.charge_rate_mi_per_min = num_field(
            *mob, "charge_rate_mi_per_min", cfg.mobility.charge_rate_mi_per_min, "mobility");
        cfg.mobility.detour_max_mi =
            num_field(*mob, "detour_max_mi", cfg.mobility.detour_max_mi, "mobility");
    }

    if (const json* dem = find(root, "demand")) {
        require_object(*dem, "demand");
        reject_unknown(*dem, "demand",
                       {"penetration_multiplier", "soc_mean", "soc_sd", "threshold_mean",
                        "threshold_sd"});
        cfg.demand.penetration_multiplier = num_field(
            *dem, "penetration_multiplier", cfg.demand.penetration_multiplier, "demand");
        cfg.demand.soc_mean = num_field(*dem, "soc_mean", cfg.demand.soc_mean, "demand");
        cfg.demand.soc_sd = num_field(*dem, "soc_sd", cfg.demand.soc_sd, "demand");
        cfg.demand.threshold_mean =
            num_field(*dem, "threshold_mean", cfg.demand.threshold_mean, "demand");
        cfg.demand.threshold_sd =
            num_field(*dem, "threshold_sd", cfg.demand.threshold_sd, "demand");
    }

    if (const json* ch = find(root, "choice")) {
        require_object(*ch, "choice");
        reject_unknown(*ch, "choice",
                       {"beta_price", "beta_detour", "beta_wait", "no_charge_utility",
                        "price_term_mode"});
        cfg.choice.beta_price = num_field(*ch, "beta_price", cfg.choice.beta_price, "choice");
        cfg.choice.beta_detour = num_field(*ch, "beta_detour", cfg.choice.beta_detour, "choice");
        cfg.choice.beta_wait = num_field(*ch, "beta_wait", cfg.choice.beta_wait, "choice");
        cfg.choice.no_charge_utility =
            num_field(*ch, "no_charge_utility", cfg.choice.no_charge_utility, "choice");
        const std::string mode = str_field(*ch, "price_term_mode", "payment", "choice");
        if (mode == "payment") {
            cfg.choice.price_term_mode = ChoiceParams::PriceTerm::Payment;
        } else if (mode == "hourly_rate") {
            cfg.choice.price_term_mode = ChoiceParams::PriceTerm::HourlyRate;
        } else {
            fail("choice.price_term_mode",
                 "must be \"payment\" or \"hourly_rate\" (got \"" + mode + "\")");
        }
    }

    if (const json* pr = find(root, "pricing")) {
        require_object(*pr, "pricing");
        reject_unknown(*pr, "pricing", {"scheme", "alpha", "step_m", "mode"});
        cfg.pricing.kind =
            parse_scheme(str_field(*pr, "scheme", "none", "pricing"), "pricing.scheme");
        cfg.pricing.alpha = num_field(*pr, "alpha", default_alpha(cfg.pricing.kind), "pricing");
        cfg.pricing.step_m = int_field(*pr, "step_m", cfg.pricing.step_m, "pricing");
        cfg.pricing.mode = parse_mode(str_field(*pr, "mode", "step", "pricing"), "pricing.mode");
    }

    if (const json* svc = find(root, "service")) {
        require_object(*svc, "service");
        reject_unknown(*svc, "service", {"extra_charge_mean_min"});
        cfg.extra_charge_mean_min =
            num_field(*svc, "extra_charge_mean_min", cfg.extra_charge_mean_min, "service");
    }

    if (const json* rr = find(root, "reroute_max")) {
        if (!rr->is_number_integer()) fail("reroute_max", "must be an integer");
        cfg.demand.reroute_budget = rr->get<int>();
    }

    if (const json* zs = find(root, "zones")) {
        if (!zs->is_array()) fail("zones", "must be an array");
        for (std::size_t i = 0; i < zs->size(); ++i) {
            const std::string path = "zones[" + std::to_string(i) + "]";
            const json& z = require_object((*zs)[i], path);
            reject_unknown(z, path, {"id", "xmin", "ymin", "xmax", "ymax"});
            Zone zone;
            zone.id = require_str(z, "id", path);
            zone.xmin = require_num(z, "xmin", path);
            zone.ymin = require_num(z, "ymin", path);
            zone.xmax = require_num(z, "xmax", path);
            zone.ymax = require_num(z, "ymax", path);
            cfg.zones.push_back(std::move(zone));
        }
    }

    if (const json* ss = find(root, "stations")) {
        if (!ss->is_array()) fail("stations", "must be an array");
        for (std::size_t i = 0; i < ss->size(); ++i) {
            const std::string path = "stations[" + std::to_string(i) + "]";
            const json& s = require_object((*ss)[i], path);
            reject_unknown(s, path, {"id", "x", "y", "chargers", "base_price"});
            StationSpec spec;
            spec.id = require_str(s, "id", path);
            spec.location.x = require_num(s, "x", path);
            spec.location.y = require_num(s, "y", path);
            if (const json* c = find(s, "chargers")) {
                if (!c->is_number_integer()) fail(path + ".chargers", "must be an integer");
                spec.chargers = c->get<int>();
            }
            spec.base_price = num_field(s, "base_price", spec.base_price, path);
            cfg.stations.push_back(std::move(spec));
        }
    }

    if (const json* os = find(root, "od_rates")) {
        if (!os->is_array()) fail("od_rates", "must be an array");
        for (std::size_t i = 0; i < os->size(); ++i) {
            const std::string path = "od_rates[" + std::to_string(i) + "]";
            const json& o = require_object((*os)[i], path);
            reject_unknown(o, path,
                           {"period_start_min", "period_end_min", "origin", "dest",
                            "trips_per_hour"});
            OdPeriodRate od;
            od.period_start_min = require_num(o, "period_start_min", path);
            od.period_end_min = require_num(o, "period_end_min", path);
            od.origin_zone = require_str(o, "origin", path);
            od.dest_zone = require_str(o, "dest", path);
            od.trips_per_hour = require_num(o, "trips_per_hour", path);
            cfg.od_rates.push_back(std::move(od));
        }
    }

    if (const json* me = find(root, "metrics")) {
        require_object(*me, "metrics");
        reject_unknown(*me, "metrics", {"lambda_bin_min", "peak_windows", "lost_value_rounded"});
        cfg.metrics.lambda_bin_min =
            num_field(*me, "lambda_bin_min", cfg.metrics.lambda_bin_min, "metrics");
        cfg.metrics.lost_value_rounded =
            bool_field(*me, "lost_value_rounded", cfg.metrics.lost_value_rounded, "metrics");
        if (const json* pw = find(*me, "peak_windows")) {
            if (!pw->is_array()) fail("metrics.peak_windows", "must be an array of [start, end]");
            cfg.metrics.peak_windows.clear();
            for (std::size_t i = 0; i < pw->size(); ++i) {
                const std::string path = "metrics.peak_windows[" + std::to_string(i) + "]";
                const json& w = (*pw)[i];
                if (!w.is_array() || w.size() != 2) fail(path, "must be a [start, end] pair");
                cfg.metrics.peak_windows.emplace_back(as_number(w[0], path + "[0]"),
                                                      as_number(w[1], path + "[1]"));
            }
        }
    }

    if (const json* out = find(root, "output")) {
        require_object(*out, "output");
        reject_unknown(*out, "output", {"dir"});
        cfg.output_dir = str_field(*out, "dir", cfg.output_dir, "output");
    }

    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(const ScenarioConfig& cfg) {
    const DemandParams& d = cfg.demand;
    check_finite(d.sim_start_min, "sim.start_min");
    check_finite(d.sim_end_min, "sim.end_min");
    if (!(d.sim_start_min < d.sim_end_min)) fail("sim.end_min", "must be > sim.start_min");
    if (cfg.replications < 1) fail("sim.replications", "must be >= 1");

    const MobilityParams& m = cfg.mobility;
    if (!(m.speed_mph > 0.0)) fail("mobility.speed_mph", "must be > 0");
    if (!(m.range_full_mi > 0.0)) fail("mobility.range_full_mi", "must be > 0");
    if (!(m.charge_rate_mi_per_min > 0.0)) fail("mobility.charge_rate_mi_per_min", "must be > 0");
    if (!(m.detour_max_mi >= 0.0)) fail("mobility.detour_max_mi", "must be >= 0");

    if (!(d.penetration_multiplier >= 0.0)) fail("demand.penetration_multiplier", "must be >= 0");
    if (!(d.soc_sd >= 0.0)) fail("demand.soc_sd", "must be >= 0");
    if (!(d.threshold_sd >= 0.0)) fail("demand.threshold_sd", "must be >= 0");
    check_finite(d.soc_mean, "demand.soc_mean");
    check_finite(d.threshold_mean, "demand.threshold_mean");
    if (d.reroute_budget < 0) fail("reroute_max", "must be >= 0");

    const ChoiceParams& c = cfg.choice;
    if (!(c.beta_price < 0.0)) fail("choice.beta_price", "must be negative (a disutility weight)");
    if (!(c.beta_detour < 0.0)) fail("choice.beta_detour", "must be negative (a disutility weight)");
    if (!(c.beta_wait < 0.0)) fail("choice.beta_wait", "must be negative (a disutility weight)");
    check_finite(c.no_charge_utility, "choice.no_charge_utility");

    if (!(cfg.pricing.alpha >= 0.0)) fail("pricing.alpha", "must be >= 0");
    check_finite(cfg.pricing.alpha, "pricing.alpha");
    if (cfg.pricing.step_m < 1) fail("pricing.step_m", "must be >= 1");

    if (!(cfg.extra_charge_mean_min >= 0.0)) fail("service.extra_charge_mean_min", "must be >= 0");

    std::set<std::string> zone_ids;
    for (std::size_t i = 0; i < cfg.zones.size(); ++i) {
        const Zone& z = cfg.zones[i];
        const std::string path = "zones[" + std::to_string(i) + "]";
        if (z.id.empty()) fail(path + ".id", "must be nonempty");
        if (!zone_ids.insert(z.id).second) fail(path + ".id", "duplicate zone id \"" + z.id + "\"");
        check_finite(z.xmin, path + ".xmin");
        check_finite(z.ymin, path + ".ymin");
        check_finite(z.xmax, path + ".xmax");
        check_finite(z.ymax, path + ".ymax");
        if (!(z.xmin < z.xmax)) fail(path, "xmin must be < xmax");
        if (!(z.ymin < z.ymax)) fail(path, "ymin must be < ymax");
    }

    std::set<std::string> station_ids;
    for (std::size_t i = 0; i < cfg.stations.size(); ++i) {
        const StationSpec& s = cfg.stations[i];
        const std::string path = "stations[" + std::to_string(i) + "]";
        if (s.id.empty()) fail(path + ".id", "must be nonempty");
        if (!station_ids.insert(s.id).second) {
            fail(path + ".id", "duplicate station id \"" + s.id + "\"");
        }
        check_finite(s.location.x, path + ".x");
        check_finite(s.location.y, path + ".y");
        if (s.chargers < 1) fail(path + ".chargers", "must be >= 1");
        if (!(s.base_price > 0.0)) fail(path + ".base_price", "must be > 0");
    }

    for (std::size_t i = 0; i < cfg.od_rates.size(); ++i) {
        const OdPeriodRate& od = cfg.od_rates[i];
        const std::string path = "od_rates[" + std::to_string(i) + "]";
        if (!(od.period_start_min < od.period_end_min)) {
            fail(path, "period_start_min must be < period_end_min");
        }
        if (!(od.trips_per_hour >= 0.0)) fail(path + ".trips_per_hour", "must be >= 0");
        if (!zone_ids.count(od.origin_zone)) {
            fail(path + ".origin", "unknown zone id \"" + od.origin_zone + "\"");
        }
        if (!zone_ids.count(od.dest_zone)) {
            fail(path + ".dest", "unknown zone id \"" + od.dest_zone + "\"");
        }
    }

    if (!(cfg.metrics.lambda_bin_min > 0.0)) fail("metrics.lambda_bin_min", "must be > 0");
    for (std::size_t i = 0; i < cfg.metrics.peak_windows.size(); ++i) {
        const auto& [a, b] = cfg.metrics.peak_windows[i];
        if (!(a < b)) {
            fail("metrics.peak_windows[" + std::to_string(i) + "]", "start must be < end");
        }
    }
    if (cfg.output_dir.empty()) fail("output.dir", "must be nonempty");
}

std::string to_json_string(const ScenarioConfig& cfg) {
    ordered_json j;
    j["sim"] = {{"start_min", cfg.demand.sim_start_min},
                {"end_min", cfg.demand.sim_end_min},
                {"seed", cfg.seed},
                {"replications", cfg.replications}};
    j["mobility"] = {{"speed_mph", cfg.mobility.speed_mph},
                     {"range_full_mi", cfg.mobility.range_full_mi},
                     {"charge_rate_mi_per_min", cfg.mobility.charge_rate_mi_per_min},
                     {"detour_max_mi", cfg.mobility.detour_max_mi}};
    j["demand"] = {{"penetration_multiplier", cfg.demand.penetration_multiplier},
                   {"soc_mean", cfg.demand.soc_mean},
                   {"soc_sd", cfg.demand.soc_sd},
                   {"threshold_mean", cfg.demand.threshold_mean},
                   {"threshold_sd", cfg.demand.threshold_sd}};
    j["choice"] = {{"beta_price", cfg.choice.beta_price},
                   {"beta_detour", cfg.choice.beta_detour},
                   {"beta_wait", cfg.choice.beta_wait},
                   {"no_charge_utility", cfg.choice.no_charge_utility},
                   {"price_term_mode",
                    cfg.choice.price_term_mode == ChoiceParams::PriceTerm::Payment
                        ? "payment"
                        : "hourly_rate"}};
    j["pricing"] = {{"scheme", to_string(cfg.pricing.kind)},
                    {"alpha", cfg.pricing.alpha},
                    {"step_m", cfg.pricing.step_m},
                    {"mode", to_string(cfg.pricing.mode)}};
    j["service"] = {{"extra_charge_mean_min", cfg.extra_charge_mean_min}};
    j["reroute_max"] = cfg.demand.reroute_budget;

    j["zones"] = ordered_json::array();
    for (const Zone& z : cfg.zones) {
        j["zones"].push_back({{"id", z.id},
                              {"xmin", z.xmin},
                              {"ymin", z.ymin},
                              {"xmax", z.xmax},
                              {"ymax", z.ymax}});
    }
    j["stations"] = ordered_json::array();
    for (const StationSpec& s : cfg.stations) {
        j["stations"].push_back({{"id", s.id},
                                 {"x", s.location.x},
                                 {"y", s.location.y},
                                 {"chargers", s.chargers},
                                 {"base_price", s.base_price}});
    }
    j["od_rates"] = ordered_json::array();
    for (const OdPeriodRate& od : cfg.od_rates) {
        j["od_rates"].push_back({{"period_start_min", od.period_start_min},
                                 {"period_end_min", od.period_end_min},
                                 {"origin", od.origin_zone},
                                 {"dest", od.dest_zone},
                                 {"trips_per_hour", od.trips_per_hour}});
    }

    ordered_json windows = ordered_json::array();
    for (const auto& [a, b] : cfg.metrics.peak_windows) windows.push_back({a, b});
    j["metrics"] = {{"lambda_bin_min", cfg.metrics.lambda_bin_min},
                    {"peak_windows", windows},
                    {"lost_value_rounded", cfg.metrics.lost_value_rounded}};
    j["output"] = {{"dir", cfg.output_dir}};
    return j.dump(2) + "\n";
}

}  // namespace evsim
