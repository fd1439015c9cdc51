#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "gapphaz/dataset.hpp"
#include "gapphaz/demo.hpp"
#include "gapphaz/empirical.hpp"
#include "gapphaz/errors.hpp"
#include "gapphaz/inference.hpp"
#include "gapphaz/io.hpp"
#include "gapphaz/rng.hpp"
#include "gapphaz/validation.hpp"

namespace gapphaz::cli {

namespace {

using io::format_double;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double number_at(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number_at(obj, key, where);
}

std::size_t count_at(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + ": '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

BaseMeasure base_from_json(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"kind", "rate", "mean", "sd"}, where);
  const std::string kind = j.value("kind", "");
  if (kind == "exponential") {
    reject_unknown_keys(j, {"kind", "rate"}, where);
    return ExponentialBase{j.contains("rate") ? number_at(j, "rate", where) : 1.0};
  }
  if (kind == "normal") {
    reject_unknown_keys(j, {"kind", "mean", "sd"}, where);
    return NormalBase{j.contains("mean") ? number_at(j, "mean", where) : 0.0,
                      j.contains("sd") ? number_at(j, "sd", where) : 1.0};
  }
  throw ConfigError(where + ": 'kind' must be \"exponential\" or \"normal\"");
}

json base_to_json(const BaseMeasure& base) {
  if (const auto* e = std::get_if<ExponentialBase>(&base)) return json{{"kind", "exponential"}, {"rate", e->rate}};
  const auto& n = std::get<NormalBase>(base);
  return json{{"kind", "normal"}, {"mean", n.mean}, {"sd", n.sd}};
}

GaPPParams gapp_from_json(const json& j, const GaPPParams& fallback, const std::string& where) {
  reject_unknown_keys(j, {"alpha", "beta", "K", "base"}, where);
  GaPPParams p = fallback;
  if (j.contains("alpha")) p.alpha = number_at(j, "alpha", where);
  if (j.contains("beta")) p.beta = number_at(j, "beta", where);
  if (j.contains("K")) p.truncation = count_at(j, "K", where);
  if (j.contains("base")) p.base = base_from_json(j.at("base"), where + ".base");
  try {
    p.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return p;
}

json gapp_to_json(const GaPPParams& p) {
  return json{{"alpha", p.alpha}, {"beta", p.beta}, {"K", p.truncation}, {"base", base_to_json(p.base)}};
}

std::vector<GaPPParams> default_gapp(ModelKind kind) {
  if (draw_count(kind) == 2) return {demo::early_prior(), demo::late_prior()};
  return {demo::early_prior()};
}

// Which scalar keys each model accepts.
std::set<std::string> scalar_keys(ModelKind kind) {
  switch (kind) {
    case ModelKind::ifr:
    case ModelKind::dfr:
    case ModelKind::sbt: return {"lambda0"};
    case ModelKind::lwb: return {"lambda0", "a"};
    case ModelKind::mbt: return {"pi", "lambda01", "lambda02"};
    case ModelKind::lcv: return {"lambda0", "w0"};
  }
  return {};
}

// "curves.csv" -> "curves"; "dir.v2/out" -> "dir.v2/out".
std::string strip_extension(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash) || dot == 0 ||
      (slash != std::string::npos && dot == slash + 1)) {
    return path;
  }
  return path.substr(0, dot);
}

OutputFile sidecar(const RunConfig& cfg, const std::string& out, const HazardModel* model) {
  json j = config_to_json(cfg);
  if (model) j["resolved_model"] = io::model_to_json(*model);
  return {sidecar_path(out), j.dump(2) + "\n"};
}

std::string format_loglik(double value) {
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

// A model file is either a model JSON or a simulate sidecar that carries one.
HazardModel model_from_document(const json& doc) {
  if (doc.is_object() && doc.contains("resolved_model")) return io::model_from_json(doc.at("resolved_model"));
  return io::model_from_json(doc);
}

std::string loglik_text(const json& model_doc, const std::string& data_text, const std::string& source,
                        std::optional<double> tau, bool per_record) {
  const HazardModel model = model_from_document(model_doc);
  const Dataset data = io::dataset_from_csv(data_text, source, tau);
  const double ll = log_likelihood(model, data, per_record ? Censoring::per_record : Censoring::common_horizon);
  return format_loglik(ll) + "\n";
}

std::string km_text(const std::string& data_text, const std::string& source) {
  const Dataset data = io::dataset_from_csv(data_text, source);
  if (data.empty()) throw ConfigError(source + ": dataset has no records");
  return io::step_function_to_csv(kaplan_meier(data));
}

}  // namespace

// --- Configuration --------------------------------------------------------

RunConfig resolve_config(const std::optional<json>& file, const Overrides& flags) {
  const json doc = file.value_or(json::object());
  reject_unknown_keys(doc,
                      {"model", "seed", "gapp", "draw_files", "lambda0", "lambda01", "lambda02", "a", "pi", "w0",
                       "prior", "n", "tau", "grid", "resolved_model"},
                      "config");
  RunConfig cfg;
  cfg.seed = demo::kDefaultSeed;

  std::string model_name = "ifr";
  if (doc.contains("model")) {
    if (!doc.at("model").is_string()) throw ConfigError("config: 'model' must be a string");
    model_name = doc.at("model").get<std::string>();
  }
  if (flags.model) model_name = *flags.model;
  cfg.model = parse_model_kind(model_name);
  const std::size_t needed = draw_count(cfg.model);
  const std::string label(to_string(cfg.model));

  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw ConfigError("config: 'seed' must be a non-negative integer");
    }
    cfg.seed = seed.get<std::uint64_t>();
  }
  if (flags.seed) cfg.seed = *flags.seed;

  cfg.gapp = default_gapp(cfg.model);
  if (doc.contains("gapp")) {
    const json& g = doc.at("gapp");
    if (!g.is_array()) throw ConfigError("config: 'gapp' must be an array of prior settings");
    if (g.size() != needed) {
      throw ConfigError("config: model '" + label + "' needs " + std::to_string(needed) +
                        " Gamma Process prior(s) in 'gapp', found " + std::to_string(g.size()));
    }
    for (std::size_t i = 0; i < needed; ++i) {
      cfg.gapp[i] = gapp_from_json(g[i], cfg.gapp[i], "config.gapp[" + std::to_string(i) + "]");
    }
  }
  if (doc.contains("draw_files")) {
    const json& f = doc.at("draw_files");
    if (!f.is_array() || !std::all_of(f.begin(), f.end(), [](const json& e) { return e.is_string(); })) {
      throw ConfigError("config: 'draw_files' must be an array of paths");
    }
    cfg.draw_files = f.get<std::vector<std::string>>();
    if (!cfg.draw_files.empty() && cfg.draw_files.size() != needed) {
      throw ConfigError("config: model '" + label + "' needs " + std::to_string(needed) +
                        " draw file(s), found " + std::to_string(cfg.draw_files.size()));
    }
  }

  const auto allowed = scalar_keys(cfg.model);
  for (const char* key : {"lambda0", "lambda01", "lambda02", "a", "pi", "w0"}) {
    if (doc.contains(key) && !doc.at(key).is_null() && !allowed.count(key)) {
      throw ConfigError("config: '" + std::string(key) + "' does not apply to model '" + label + "'");
    }
  }
  cfg.lambda0 = optional_number(doc, "lambda0", "config");
  cfg.lambda01 = optional_number(doc, "lambda01", "config");
  cfg.lambda02 = optional_number(doc, "lambda02", "config");
  cfg.a = optional_number(doc, "a", "config");
  cfg.pi = optional_number(doc, "pi", "config");
  cfg.w0 = optional_number(doc, "w0", "config");

  if (doc.contains("prior") && !doc.at("prior").is_null()) {
    const json& p = doc.at("prior");
    reject_unknown_keys(p, {"nu", "pi_uniform"}, "config.prior");
    PriorSpec spec;
    if (p.contains("nu")) spec.nu = number_at(p, "nu", "config.prior");
    if (p.contains("pi_uniform")) {
      if (!p.at("pi_uniform").is_boolean()) throw ConfigError("config.prior: 'pi_uniform' must be true or false");
      spec.pi_uniform = p.at("pi_uniform").get<bool>();
    }
    if (!(spec.nu > 0.0)) throw ConfigError("config.prior: 'nu' must be > 0");
    for (const auto& v : {cfg.lambda0, cfg.lambda01, cfg.lambda02, cfg.w0}) {
      if (v) throw ConfigError("config: baseline rates and w0 are drawn from 'prior'; do not also set them");
    }
    if (spec.pi_uniform && cfg.pi) throw ConfigError("config: set either 'pi' or prior.pi_uniform, not both");
    cfg.prior = spec;
  }
  // Demo defaults for whatever is still unset.
  if (!cfg.prior) {
    switch (cfg.model) {
      case ModelKind::ifr:
      case ModelKind::dfr:
      case ModelKind::sbt:
      case ModelKind::lwb: cfg.lambda0 = cfg.lambda0.value_or(demo::kBaseline); break;
      case ModelKind::mbt:
        cfg.lambda01 = cfg.lambda01.value_or(demo::kBaseline);
        cfg.lambda02 = cfg.lambda02.value_or(demo::kBaseline);
        break;
      case ModelKind::lcv:
        cfg.lambda0 = cfg.lambda0.value_or(demo::kLcvBaseline);
        cfg.w0 = cfg.w0.value_or(demo::kLcvInitialSlope);
        break;
    }
  }
  if (cfg.model == ModelKind::lwb) cfg.a = cfg.a.value_or(demo::kSymmetryPoint);
  if (cfg.model == ModelKind::mbt && !(cfg.prior && cfg.prior->pi_uniform)) {
    cfg.pi = cfg.pi.value_or(demo::kMixtureWeight);
  }

  if (doc.contains("n")) cfg.n = count_at(doc, "n", "config");
  if (flags.n) cfg.n = *flags.n;
  cfg.tau = optional_number(doc, "tau", "config");
  if (flags.tau) cfg.tau = *flags.tau;

  cfg.grid.tmax = demo::kTimeHorizon;
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    reject_unknown_keys(g, {"tmax", "points"}, "config.grid");
    if (g.contains("tmax")) cfg.grid.tmax = number_at(g, "tmax", "config.grid");
    if (g.contains("points")) cfg.grid.points = count_at(g, "points", "config.grid");
  }
  if (flags.tmax) cfg.grid.tmax = *flags.tmax;
  if (flags.points) cfg.grid.points = *flags.points;

  if (cfg.n < 1) throw ConfigError("config: n must be >= 1");
  if (cfg.tau && !(*cfg.tau > 0.0 && std::isfinite(*cfg.tau))) throw ConfigError("config: tau must be > 0");
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["model"] = std::string(to_string(cfg.model));
  j["seed"] = cfg.seed;
  json g = json::array();
  for (const auto& p : cfg.gapp) g.push_back(gapp_to_json(p));
  j["gapp"] = std::move(g);
  if (!cfg.draw_files.empty()) j["draw_files"] = cfg.draw_files;
  const auto put = [&j](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("lambda0", cfg.lambda0);
  put("lambda01", cfg.lambda01);
  put("lambda02", cfg.lambda02);
  put("a", cfg.a);
  put("pi", cfg.pi);
  put("w0", cfg.w0);
  if (cfg.prior) j["prior"] = json{{"nu", cfg.prior->nu}, {"pi_uniform", cfg.prior->pi_uniform}};
  j["n"] = cfg.n;
  if (cfg.tau) j["tau"] = *cfg.tau;
  j["grid"] = json{{"tmax", cfg.grid.tmax}, {"points", cfg.grid.points}};
  return j;
}

std::vector<GammaProcessDraw> make_draws(const RunConfig& cfg) {
  std::vector<GammaProcessDraw> draws;
  if (!cfg.draw_files.empty()) {
    for (const auto& path : cfg.draw_files) {
      const auto loaded = io::draws_from_json(io::read_json_file(path));
      if (loaded.size() != 1) throw ConfigError(path + ": expected a single prior draw");
      draws.push_back(loaded.front());
    }
    return draws;
  }
  const RandomStream root = new_stream(cfg.seed);
  const std::uint64_t ids[] = {demo::kEarlyDrawStream, demo::kLateDrawStream};
  for (std::size_t i = 0; i < cfg.gapp.size(); ++i) {
    RandomStream s = root.split(ids[i]);
    draws.push_back(draw_gapp(cfg.gapp[i], s));
  }
  return draws;
}

HazardModel make_model(const RunConfig& cfg) {
  const auto draws = make_draws(cfg);
  if (cfg.prior) {
    HyperParams hyper;
    hyper.nu = cfg.prior->nu;
    ModelInputs inputs;
    inputs.symmetry_point = cfg.a;
    inputs.mixture_weight = cfg.pi;
    inputs.mixture_weight_prior = cfg.prior->pi_uniform;
    RandomStream s = new_stream(cfg.seed).split(demo::kParamStream);
    return draw_model_params(cfg.model, draws, hyper, inputs, s);
  }
  switch (cfg.model) {
    case ModelKind::ifr: return IfrModel(*cfg.lambda0, draws[0]);
    case ModelKind::dfr: return DfrModel(*cfg.lambda0, draws[0]);
    case ModelKind::lwb: return LwbModel(*cfg.lambda0, *cfg.a, draws[0]);
    case ModelKind::sbt: return SbtModel(*cfg.lambda0, draws[0], draws[1]);
    case ModelKind::mbt: return MbtModel(*cfg.pi, *cfg.lambda01, draws[0], *cfg.lambda02, draws[1]);
    case ModelKind::lcv: return LcvModel(*cfg.lambda0, *cfg.w0, draws[0]);
  }
  throw std::logic_error("make_model: unhandled model kind");
}

std::string sidecar_path(const std::string& out) { return strip_extension(out) + ".config.json"; }

// --- Commands -------------------------------------------------------------

CommandOutput cmd_draw(const RunConfig& cfg, const std::string& out) {
  const auto draws = make_draws(cfg);
  CommandOutput result;
  std::string csv = "draw,k,theta,weight\n";
  for (std::size_t d = 0; d < draws.size(); ++d) {
    for (std::size_t k = 0; k < draws[d].size(); ++k) {
      csv += std::to_string(d + 1) + "," + std::to_string(k + 1) + "," + format_double(draws[d].thetas()[k]) + "," +
             format_double(draws[d].weights()[k]) + "\n";
    }
  }
  const std::string text = io::draws_to_json(draws).dump(2) + "\n";
  if (out.empty()) {
    result.stdout_text = text;
    return result;
  }
  result.files.push_back({out, text});
  result.files.push_back({strip_extension(out) + ".csv", csv});
  result.files.push_back(sidecar(cfg, out, nullptr));
  return result;
}

CommandOutput cmd_curves(const RunConfig& cfg, const std::string& out) {
  const GridSpec& g = cfg.grid;
  detail::require_domain(g.tmax > 0.0 && std::isfinite(g.tmax), "curves: tmax must be > 0");
  detail::require_domain(g.points >= 2, "curves: the grid needs at least 2 points");
  const HazardModel model = make_model(cfg);

  std::vector<double> grid;
  grid.reserve(g.points);
  for (std::size_t i = 0; i < g.points; ++i) {
    grid.push_back(i + 1 == g.points ? g.tmax : g.tmax * static_cast<double>(i) / static_cast<double>(g.points - 1));
  }
  // Paired rows just before and at each breakpoint render the jumps exactly.
  for (double b : breakpoints(model)) {
    if (b > 0.0 && b <= g.tmax) {
      grid.push_back(std::nextafter(b, 0.0));
      grid.push_back(b);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::string csv = "t,hazard,cum_hazard,density,survival\n";
  for (double t : grid) {
    csv += format_double(t) + "," + format_double(hazard(model, t)) + "," + format_double(cum_hazard(model, t)) + "," +
           format_double(density(model, t)) + "," + format_double(survival(model, t)) + "\n";
  }
  CommandOutput result;
  if (out.empty()) {
    result.stdout_text = csv;
    return result;
  }
  result.files.push_back({out, csv});
  result.files.push_back(sidecar(cfg, out, &model));
  return result;
}

CommandOutput cmd_simulate(const RunConfig& cfg, const std::string& out) {
  const HazardModel model = make_model(cfg);
  RandomStream s = new_stream(cfg.seed).split(demo::kSampleStream);
  const Dataset data = simulate_dataset(model, cfg.n, cfg.tau, s);
  CommandOutput result;
  const std::string csv = io::dataset_to_csv(data);
  if (out.empty()) {
    result.stdout_text = csv;
    return result;
  }
  result.files.push_back({out, csv});
  result.files.push_back(sidecar(cfg, out, &model));
  return result;
}

CommandOutput cmd_loglik(const std::string& model_file, const std::string& data_file, std::optional<double> tau,
                         bool per_record, const std::string& out) {
  const std::string text =
      loglik_text(io::read_json_file(model_file), io::read_text_file(data_file), data_file, tau, per_record);
  CommandOutput result;
  result.stdout_text = text;
  if (!out.empty()) result.files.push_back({out, text});
  return result;
}

CommandOutput cmd_km(const std::string& data_file, const std::string& out) {
  const std::string csv = km_text(io::read_text_file(data_file), data_file);
  CommandOutput result;
  if (out.empty()) {
    result.stdout_text = csv;
  } else {
    result.files.push_back({out, csv});
  }
  return result;
}

// Every command run twice from the same config and seed must produce the
// same bytes. File-reading commands are fed the in-memory simulate output.
validation::CheckResult check_determinism(const validation::Options& opt) {
  const std::uint64_t seed = opt.seed;
  std::size_t mismatches = 0;
  const auto same = [&mismatches](const CommandOutput& x, const CommandOutput& y) {
    bool eq = x.stdout_text == y.stdout_text && x.files.size() == y.files.size();
    for (std::size_t i = 0; eq && i < x.files.size(); ++i) {
      eq = x.files[i].path == y.files[i].path && x.files[i].content == y.files[i].content;
    }
    if (!eq) ++mismatches;
  };
  for (ModelKind kind : kAllModelKinds) {
    Overrides flags;
    flags.model = std::string(to_string(kind));
    flags.seed = seed;
    flags.n = 200;
    flags.tau = 4.0;
    const RunConfig cfg = resolve_config(std::nullopt, flags);
    same(cmd_draw(cfg, "draw.json"), cmd_draw(cfg, "draw.json"));
    same(cmd_curves(cfg, "curves.csv"), cmd_curves(cfg, "curves.csv"));
    const CommandOutput sim1 = cmd_simulate(cfg, "data.csv");
    const CommandOutput sim2 = cmd_simulate(cfg, "data.csv");
    same(sim1, sim2);
    const json sidecar_doc = json::parse(sim1.files.at(1).content);
    const auto ll = [&] {
      CommandOutput r;
      r.stdout_text = loglik_text(sidecar_doc, sim1.files.at(0).content, "data.csv", cfg.tau, false);
      return r;
    };
    same(ll(), ll());
    const auto km = [&] {
      CommandOutput r;
      r.stdout_text = km_text(sim1.files.at(0).content, "data.csv");
      return r;
    };
    same(km(), km());
    // Feeding the sidecar back as the config reproduces the run.
    const RunConfig replay = resolve_config(sidecar_doc, Overrides{});
    same(sim1, cmd_simulate(replay, "data.csv"));
  }
  return validation::detail::make(10, "CLI outputs byte-identical across reruns (mismatching runs)",
                                  static_cast<double>(mismatches), 0.0, opt);
}

CommandOutput cmd_validate(std::uint64_t seed, double tolerance_scale) {
  validation::Options opt;
  opt.seed = seed;
  opt.tolerance_scale = tolerance_scale;
  auto checks = validation::run_all(opt);
  checks.push_back(check_determinism(opt));

  CommandOutput result;
  std::ostringstream os;
  os << "seed " << seed << ", tolerance scale " << format_double(tolerance_scale) << "\n";
  std::size_t passed = 0;
  for (const auto& c : checks) {
    os << validation::format_line(c) << "\n";
    passed += c.passed ? 1 : 0;
  }
  os << passed << "/" << checks.size() << " checks passed\n";
  result.stdout_text = os.str();
  result.exit_code = passed == checks.size() ? 0 : 1;
  return result;
}

void emit(const CommandOutput& result) {
  for (const auto& f : result.files) io::write_text_file(f.path, f.content);
  std::cout << result.stdout_text << std::flush;
}

// --- Argument parsing -------------------------------------------------------

int run(int argc, const char* const* argv) {
  CLI::App app{"Gamma Process Prior hazard-rate models: prior draws, curves, simulation, likelihood"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  Overrides flags;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--seed", flags.seed, "random seed (overrides the config)");
    cmd->add_option("--model", flags.model, "ifr | dfr | lwb | sbt | mbt | lcv (overrides the config)");
    cmd->add_option("--out", out, "output path (stdout when omitted)");
  };

  auto* draw = app.add_subcommand("draw", "sample the Gamma Process prior draw(s) for a model");
  add_common(draw);

  auto* curves = app.add_subcommand("curves", "tabulate hazard, cumulative hazard, density and survival");
  add_common(curves);
  curves->add_option("--tmax", flags.tmax, "grid end point");
  curves->add_option("--points", flags.points, "number of equally spaced grid points");

  auto* simulate = app.add_subcommand("simulate", "simulate a failure-time dataset");
  add_common(simulate);
  simulate->add_option("--n", flags.n, "number of units");
  simulate->add_option("--tau", flags.tau, "censoring horizon");

  std::string model_file, data_file;
  std::optional<double> tau;
  bool per_record = false;
  auto* loglik = app.add_subcommand("loglik", "evaluate the log-likelihood of a dataset under a model");
  loglik->add_option("--model-file", model_file, "model JSON (or a simulate sidecar)")->required();
  loglik->add_option("--data", data_file, "dataset CSV (time,status)")->required();
  loglik->add_option("--tau", tau, "censoring horizon shared by all censored records");
  loglik->add_flag("--per-record", per_record, "treat each censored time as that record's own horizon");
  loglik->add_option("--out", out, "also write the value to this file");

  auto* km = app.add_subcommand("km", "Kaplan-Meier survival curve of a dataset");
  km->add_option("--data", data_file, "dataset CSV (time,status)")->required();
  km->add_option("--out", out, "output path (stdout when omitted)");

  std::uint64_t validate_seed = demo::kDefaultSeed;
  double tolerance_scale = 1.0;
  auto* validate = app.add_subcommand("validate", "run the verification suite and report each check");
  validate->add_option("--seed", validate_seed, "random seed");
  validate->add_option("--tolerance-scale", tolerance_scale, "multiply every tolerance by this factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const auto config = [&] {
      std::optional<json> file;
      if (!config_path.empty()) file = io::read_json_file(config_path);
      return resolve_config(file, flags);
    };
    CommandOutput result;
    if (draw->parsed()) {
      result = cmd_draw(config(), out);
    } else if (curves->parsed()) {
      result = cmd_curves(config(), out);
    } else if (simulate->parsed()) {
      result = cmd_simulate(config(), out);
    } else if (loglik->parsed()) {
      result = cmd_loglik(model_file, data_file, tau, per_record, out);
    } else if (km->parsed()) {
      result = cmd_km(data_file, out);
    } else {
      result = cmd_validate(validate_seed, tolerance_scale);
    }
    emit(result);
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gapphaz::cli
