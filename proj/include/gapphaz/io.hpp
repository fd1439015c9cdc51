#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "gapphaz/dataset.hpp"
#include "gapphaz/empirical.hpp"
#include "gapphaz/errors.hpp"
#include "gapphaz/gamma_process.hpp"
#include "gapphaz/hazard_models.hpp"

namespace gapphaz::io {

using json = nlohmann::json;

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// --- Gamma Process draws -------------------------------------------------

inline json draw_to_json(const GammaProcessDraw& g) {
  json j;
  j["gamma"] = g.gamma();
  j["thetas"] = std::vector<double>(g.thetas().begin(), g.thetas().end());
  j["sticks"] = std::vector<double>(g.sticks().begin(), g.sticks().end());
  j["weights"] = std::vector<double>(g.weights().begin(), g.weights().end());
  return j;
}

/**
 * Rebuilds a draw. When the sticks are valid the weights are recomputed
 * from (gamma, sticks), reproducing the original draw bit for bit, and
 * the stored weights are only cross-checked. Hand-built measures (zero or
 * saturated sticks) are rebuilt from their explicit weights.
 */
inline GammaProcessDraw draw_from_json(const json& j) {
  try {
    const double gamma = j.at("gamma").get<double>();
    auto thetas = j.at("thetas").get<std::vector<double>>();
    auto sticks = j.at("sticks").get<std::vector<double>>();
    auto weights = j.at("weights").get<std::vector<double>>();
    if (thetas.size() != weights.size()) throw ParseError("prior draw: thetas and weights differ in length");
    const bool sticks_valid = gamma > 0.0 && !thetas.empty() && sticks.size() + 1 == thetas.size() &&
                              std::all_of(sticks.begin(), sticks.end(), [](double v) { return v > 0.0 && v < 1.0; });
    if (!sticks_valid) return GammaProcessDraw::from_atoms(std::move(thetas), std::move(weights));
    auto g = GammaProcessDraw::from_sticks(gamma, std::move(thetas), std::move(sticks));
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (std::abs(g.weights()[k] - weights[k]) > 1e-12 * std::max(1.0, gamma)) {
        throw ParseError("prior draw: weights are inconsistent with gamma and sticks at atom " +
                         std::to_string(k));
      }
    }
    return g;
  } catch (const json::exception& e) {
    throw ParseError(std::string("prior draw: ") + e.what());
  }
}

/// A prior-draw file holds one draw object or an array of them.
inline std::vector<GammaProcessDraw> draws_from_json(const json& j) {
  std::vector<GammaProcessDraw> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(draw_from_json(e));
  } else {
    out.push_back(draw_from_json(j));
  }
  return out;
}

inline json draws_to_json(std::span<const GammaProcessDraw> draws) {
  if (draws.size() == 1) return draw_to_json(draws[0]);
  json arr = json::array();
  for (const auto& g : draws) arr.push_back(draw_to_json(g));
  return arr;
}

// --- Models --------------------------------------------------------------

inline json model_to_json(const HazardModel& model) {
  json j;
  j["model"] = std::string(to_string(kind_of(model)));
  json draws = json::array();
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, IfrModel> || std::is_same_v<M, DfrModel>) {
          j["lambda0"] = m.baseline();
          draws.push_back(draw_to_json(m.measure()));
        } else if constexpr (std::is_same_v<M, LwbModel>) {
          j["lambda0"] = m.baseline();
          j["a"] = m.symmetry_point();
          draws.push_back(draw_to_json(m.measure()));
        } else if constexpr (std::is_same_v<M, SbtModel>) {
          j["lambda0"] = m.baseline();
          draws.push_back(draw_to_json(m.early_measure()));
          draws.push_back(draw_to_json(m.late_measure()));
        } else if constexpr (std::is_same_v<M, MbtModel>) {
          j["pi"] = m.mixture_weight();
          j["lambda01"] = m.early().baseline();
          j["lambda02"] = m.late().baseline();
          draws.push_back(draw_to_json(m.early().measure()));
          draws.push_back(draw_to_json(m.late().measure()));
        } else {
          j["lambda0"] = m.baseline();
          j["w0"] = m.initial_slope();
          draws.push_back(draw_to_json(m.measure()));
        }
      },
      model);
  j["draws"] = std::move(draws);
  return j;
}

namespace detail {
inline double required_number(const json& j, const char* key, ModelKind kind) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError("model '" + std::string(to_string(kind)) + "': missing numeric field '" + key + "'");
  }
  return j.at(key).get<double>();
}
}  // namespace detail

inline HazardModel model_from_json(const json& j) {
  if (!j.contains("model") || !j.at("model").is_string()) throw ParseError("model file: missing 'model' tag");
  const ModelKind kind = parse_model_kind(j.at("model").get<std::string>());
  if (!j.contains("draws")) throw ParseError("model file: missing 'draws'");
  const auto draws = draws_from_json(j.at("draws"));
  if (draws.size() != draw_count(kind)) {
    throw ParseError("model '" + std::string(to_string(kind)) + "': expected " +
                     std::to_string(draw_count(kind)) + " draw(s), found " + std::to_string(draws.size()));
  }
  using detail::required_number;
  switch (kind) {
    case ModelKind::ifr: return IfrModel(required_number(j, "lambda0", kind), draws[0]);
    case ModelKind::dfr: return DfrModel(required_number(j, "lambda0", kind), draws[0]);
    case ModelKind::lwb:
      return LwbModel(required_number(j, "lambda0", kind), required_number(j, "a", kind), draws[0]);
    case ModelKind::sbt: return SbtModel(required_number(j, "lambda0", kind), draws[0], draws[1]);
    case ModelKind::mbt:
      return MbtModel(required_number(j, "pi", kind), required_number(j, "lambda01", kind), draws[0],
                      required_number(j, "lambda02", kind), draws[1]);
    case ModelKind::lcv:
      return LcvModel(required_number(j, "lambda0", kind), required_number(j, "w0", kind), draws[0]);
  }
  throw ParseError("model file: unhandled model kind");
}

// --- Files ---------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline json read_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// --- Dataset CSV: header `time,status`, status 1 observed / 0 censored ----

inline std::string dataset_to_csv(const Dataset& data) {
  std::string out = "time,status\n";
  for (const auto& r : data.records) {
    out += format_double(r.time);
    out += r.observed ? ",1\n" : ",0\n";
  }
  return out;
}

namespace detail {
inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}
}  // namespace detail

/// Parses the dataset CSV. `source` names the input in error messages.
/// Row numbers count the header as row 1.
inline Dataset dataset_from_csv(std::string_view text, const std::string& source = "dataset",
                                std::optional<double> tau = std::nullopt) {
  Dataset data;
  data.tau = tau;
  std::size_t row = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = detail::trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++row;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "time,status") {
        throw ParseError(source + ": row " + std::to_string(row) + ": expected header 'time,status'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(source + ": row " + std::to_string(row) + ": expected 'time,status'");
    }
    double time = 0.0;
    if (!detail::parse_number(line.substr(0, comma), time) || !std::isfinite(time)) {
      throw ParseError(source + ": row " + std::to_string(row) + ": time is not a number");
    }
    if (!(time > 0.0)) {
      throw ParseError(source + ": row " + std::to_string(row) + ": time must be > 0, got " +
                       std::string(detail::trim(line.substr(0, comma))));
    }
    const std::string_view status = detail::trim(line.substr(comma + 1));
    if (status != "0" && status != "1") {
      throw ParseError(source + ": row " + std::to_string(row) + ": status must be 0 or 1");
    }
    data.records.push_back({time, status == "1"});
  }
  if (!header_seen) throw ParseError(source + ": empty file (missing header 'time,status')");
  return data;
}

// --- Step function CSV: `t,value`, first row is the level at t = 0 -------

inline std::string step_function_to_csv(const StepFunction& f) {
  std::string out = "t,value\n0," + format_double(f.initial()) + "\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += format_double(f.breakpoints()[i]) + "," + format_double(f.values()[i]) + "\n";
  }
  return out;
}

inline StepFunction step_function_from_csv(std::string_view text, const std::string& source = "step function") {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t row = 0;
  std::vector<double> ts, vs;
  while (std::getline(in, line)) {
    ++row;
    const auto l = detail::trim(line);
    if (l.empty() || row == 1) continue;
    const auto comma = l.find(',');
    double t = 0.0, v = 0.0;
    if (comma == std::string_view::npos || !detail::parse_number(l.substr(0, comma), t) ||
        !detail::parse_number(l.substr(comma + 1), v)) {
      throw ParseError(source + ": row " + std::to_string(row) + ": expected 't,value'");
    }
    ts.push_back(t);
    vs.push_back(v);
  }
  if (ts.empty()) throw ParseError(source + ": no rows");
  const double initial = vs.front();
  return StepFunction(initial, {ts.begin() + 1, ts.end()}, {vs.begin() + 1, vs.end()});
}

}  // namespace gapphaz::io
