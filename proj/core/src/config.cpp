#include "brw/config.hpp"

#include <fstream>

#include "brw/registry.hpp"

namespace brw {

namespace {

using nlohmann::json;

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

IntensityLaw parse_law(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const json* kind = find(j, "kind");
  if (!kind || !kind->is_string())
    throw ConfigError(path + ".kind", "expected \"constant\" or \"weibull\"");
  const std::string k = kind->get<std::string>();
  try {
    if (k == "constant") {
      const json* v = find(j, "value");
      if (!v) throw ConfigError(path + ".value", "required for constant laws");
      return IntensityLaw::constant(get_number(*v, path + ".value"));
    }
    if (k == "weibull") {
      const json* shape = find(j, "shape");
      const json* scale = find(j, "scale");
      if (!shape || !scale)
        throw ConfigError(path, "weibull laws need shape and scale");
      return IntensityLaw::weibull(get_number(*shape, path + ".shape"),
                                   get_number(*scale, path + ".scale"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + ".kind", "unknown law kind '" + k + "'");
}

json law_to_json(const IntensityLaw& law) {
  if (law.kind == IntensityLaw::Kind::Constant)
    return {{"kind", "constant"}, {"value", law.value}};
  return {{"kind", "weibull"}, {"shape", law.shape}, {"scale", law.scale}};
}

SourceConfiguration parse_sources(const json& j, const std::string& path,
                                  int dimension) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "origin")
      return SourceConfiguration::single_point(
          LatticePoint(static_cast<std::size_t>(dimension), 0));
    if (s == "every_point") return SourceConfiguration::every_point();
    throw ConfigError(path, "expected \"origin\", \"every_point\", or a list");
  }
  if (!j.is_array() || j.empty())
    throw ConfigError(path, "expected a nonempty coordinate list");
  std::vector<LatticePoint> pts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& p = j[i];
    const std::string ppath = path + "[" + std::to_string(i) + "]";
    if (!p.is_array() || static_cast<int>(p.size()) != dimension)
      throw ConfigError(ppath, "expected " + std::to_string(dimension) +
                                   " integer coordinates");
    LatticePoint point;
    for (const json& c : p)
      point.push_back(static_cast<std::int32_t>(get_int(c, ppath)));
    pts.push_back(std::move(point));
  }
  return SourceConfiguration::point_set(std::move(pts));
}

json sources_to_json(const SourceConfiguration& s) {
  using Kind = SourceConfiguration::Kind;
  if (s.kind == Kind::EveryPoint) return "every_point";
  if (s.kind == Kind::SinglePoint) {
    bool at_origin = true;
    for (auto c : s.points.front()) at_origin &= (c == 0);
    if (at_origin) return "origin";
  }
  json arr = json::array();
  for (const LatticePoint& p : s.points) {
    json point = json::array();
    for (auto c : p) point.push_back(c);
    arr.push_back(point);
  }
  return arr;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("", "config root must be an object");
  ExperimentConfig cfg;

  const json* model = find(j, "model");
  const json* medium = find(j, "medium");
  if (!model && !medium)
    throw ConfigError("model", "either 'model' or 'medium' is required");
  if (model && medium)
    throw ConfigError("model", "'model' and 'medium' are mutually exclusive");

  if (const json* lattice = find(j, "lattice")) {
    if (const json* v = find(*lattice, "dimension"))
      cfg.dimension = get_int(*v, "lattice.dimension");
    if (const json* v = find(*lattice, "side"))
      cfg.lattice_side = get_int(*v, "lattice.side");
    if (const json* v = find(*lattice, "boundary_policy")) {
      const std::string s = v->is_string() ? v->get<std::string>() : "";
      if (s == "error")
        cfg.boundary_policy = BoundaryPolicy::Error;
      else if (s == "kill_with_flag")
        cfg.boundary_policy = BoundaryPolicy::KillWithFlag;
      else
        throw ConfigError("lattice.boundary_policy",
                          "expected \"error\" or \"kill_with_flag\"");
    }
  }

  if (model) {
    cfg.model_id = get_int(*model, "model");
    try {
      model_registry(*cfg.model_id);
    } catch (const std::domain_error& e) {
      throw ConfigError("model", e.what());
    }
  } else {
    cfg.medium.split_law = parse_law(
        medium->contains("split_law") ? (*medium)["split_law"] : json(),
        "medium.split_law");
    cfg.medium.death_law = parse_law(
        medium->contains("death_law") ? (*medium)["death_law"] : json(),
        "medium.death_law");
    const json* sources = find(*medium, "sources");
    if (!sources) throw ConfigError("medium.sources", "required");
    cfg.medium.sources = parse_sources(*sources, "medium.sources", cfg.dimension);
  }

  if (const json* engine = find(j, "engine")) {
    if (const json* v = find(*engine, "kappa"))
      cfg.engine.kappa = get_number(*v, "engine.kappa");
    if (const json* v = find(*engine, "t_max"))
      cfg.engine.t_max = get_number(*v, "engine.t_max");
    if (const json* v = find(*engine, "particle_cap"))
      cfg.engine.particle_cap = get_int(*v, "engine.particle_cap");
    if (const json* v = find(*engine, "holding_time_mode")) {
      const std::string s = v->is_string() ? v->get<std::string>() : "";
      if (s == "total_rate")
        cfg.engine.holding_time_mode = HoldingTimeMode::TotalRate;
      else if (s == "walk_rate_only")
        cfg.engine.holding_time_mode = HoldingTimeMode::WalkRateOnly;
      else
        throw ConfigError("engine.holding_time_mode",
                          "expected \"total_rate\" or \"walk_rate_only\"");
    }
  }

  if (const json* v = find(j, "m")) cfg.replicates = get_int(*v, "m");
  if (const json* v = find(j, "m1")) cfg.media_count = get_int(*v, "m1");
  if (const json* v = find(j, "snapshot_times")) {
    if (!v->is_array()) throw ConfigError("snapshot_times", "expected an array");
    cfg.snapshot_times.clear();
    for (const json& t : *v)
      cfg.snapshot_times.push_back(get_number(t, "snapshot_times"));
  }
  if (const json* v = find(j, "master_seed"))
    cfg.master_seed = v->is_number_unsigned() || v->is_number_integer()
                          ? v->get<std::uint64_t>()
                          : throw ConfigError("master_seed", "expected an integer");
  if (const json* v = find(j, "workers")) cfg.workers = get_int(*v, "workers");
  if (const json* v = find(j, "output_dir")) {
    if (!v->is_string()) throw ConfigError("output_dir", "expected a string");
    cfg.output_dir = v->get<std::string>();
  }
  if (const json* report = find(j, "report")) {
    if (const json* v = find(*report, "grid_dt"))
      cfg.report_grid_dt = get_number(*v, "report.grid_dt");
  }
  if (const json* ex = find(j, "extrapolate")) {
    if (const json* v = find(*ex, "grid_dt"))
      cfg.fit_grid_dt = get_number(*v, "extrapolate.grid_dt");
  }
  if (const json* stats = find(j, "stats")) {
    if (const json* v = find(*stats, "trim_fraction"))
      cfg.trim_fraction = get_number(*v, "stats.trim_fraction");
    if (const json* v = find(*stats, "powers")) {
      if (!v->is_array()) throw ConfigError("stats.powers", "expected an array");
      cfg.powers.clear();
      for (const json& p : *v) cfg.powers.push_back(get_int(p, "stats.powers"));
    }
    if (const json* v = find(*stats, "orders")) {
      if (!v->is_array()) throw ConfigError("stats.orders", "expected an array");
      cfg.orders.clear();
      for (const json& p : *v) cfg.orders.push_back(get_int(p, "stats.orders"));
    }
    if (const json* v = find(*stats, "lyapunov_beta"))
      cfg.lyapunov_beta = get_number(*v, "stats.lyapunov_beta");
    if (const json* v = find(*stats, "lyapunov_window_fraction"))
      cfg.lyapunov_window_fraction =
          get_number(*v, "stats.lyapunov_window_fraction");
  }
  if (const json* oracle = find(j, "oracle")) {
    if (const json* v = find(*oracle, "dt"))
      cfg.oracle_dt = get_number(*v, "oracle.dt");
    if (const json* v = find(*oracle, "window_side"))
      cfg.oracle_window_side = get_int(*v, "oracle.window_side");
  }

  try {
    cfg.resolve();
  } catch (const std::exception& e) {
    throw ConfigError("", e.what());
  }
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  const json medium = {{"sources", sources_to_json(cfg.medium.sources)},
                       {"split_law", law_to_json(cfg.medium.split_law)},
                       {"death_law", law_to_json(cfg.medium.death_law)}};
  // 'model' and 'medium' are mutually exclusive inputs; registry-backed
  // configs echo the resolved medium under an informational key instead.
  if (cfg.model_id) {
    j["model"] = *cfg.model_id;
    j["resolved_medium"] = medium;
  } else {
    j["medium"] = medium;
  }
  j["lattice"] = {
      {"dimension", cfg.dimension},
      {"side", cfg.lattice_side},
      {"boundary_policy", cfg.boundary_policy == BoundaryPolicy::Error
                              ? "error"
                              : "kill_with_flag"}};
  j["engine"] = {{"kappa", cfg.engine.kappa},
                 {"t_max", cfg.engine.t_max},
                 {"particle_cap", cfg.engine.particle_cap},
                 {"holding_time_mode",
                  cfg.engine.holding_time_mode == HoldingTimeMode::TotalRate
                      ? "total_rate"
                      : "walk_rate_only"}};
  j["m"] = cfg.replicates;
  j["m1"] = cfg.media_count;
  j["snapshot_times"] = cfg.snapshot_times;
  j["master_seed"] = cfg.master_seed;
  j["workers"] = cfg.workers;
  j["output_dir"] = cfg.output_dir.string();
  j["report"] = {{"grid_dt", cfg.report_grid_dt}};
  j["extrapolate"] = {{"grid_dt", cfg.fit_grid_dt}};
  j["stats"] = {{"trim_fraction", cfg.trim_fraction},
                {"powers", cfg.powers},
                {"orders", cfg.orders},
                {"lyapunov_beta", cfg.lyapunov_beta},
                {"lyapunov_window_fraction", cfg.lyapunov_window_fraction}};
  j["oracle"] = {{"dt", cfg.oracle_dt},
                 {"window_side", cfg.oracle_window_side}};
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("JSON parse error: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace brw
