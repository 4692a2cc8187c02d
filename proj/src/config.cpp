#include "ebk/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace ebk {

using nlohmann::ordered_json;

const char* task_name(Task t) {
  switch (t) {
    case Task::Dims: return "dims";
    case Task::Decompose: return "decompose";
    case Task::Density: return "density";
    case Task::Scan: return "scan";
    case Task::Fit: return "fit";
    case Task::Ladder: return "ladder";
    case Task::Verify: return "verify";
  }
  return "?";
}

static Task parse_task(const std::string& s) {
  if (s == "dims") return Task::Dims;
  if (s == "decompose") return Task::Decompose;
  if (s == "density") return Task::Density;
  if (s == "scan") return Task::Scan;
  if (s == "fit") return Task::Fit;
  if (s == "ladder") return Task::Ladder;
  if (s == "verify") return Task::Verify;
  throw ConfigError("unknown task: " + s);
}

static Rational parse_rational_field(const ordered_json& j, const char* what) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
  throw ConfigError(std::string(what) + ": expected integer or rational string");
}

static Model parse_model(const ordered_json& j) {
  if (!j.is_object()) throw ConfigError("model: expected object");
  std::string type = j.value("type", "");
  std::vector<int> pol;
  if (j.contains("polarization")) {
    if (!j["polarization"].is_array()) throw ConfigError("model.polarization: expected array");
    for (const auto& v : j["polarization"]) pol.push_back(v.get<int>());
  }
  try {
    if (type == "P1") {
      if (pol.empty()) pol = {1};
      if (pol.size() != 1) throw ConfigError("model.polarization: P1 takes one entry");
      return Model::p1(pol[0]);
    }
    if (type == "P1xP1") {
      if (pol.empty()) pol = {1, 1};
      if (pol.size() != 2) throw ConfigError("model.polarization: P1xP1 takes two entries");
      return Model::p1xp1(pol[0], pol[1]);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  throw ConfigError("model.type: expected P1 or P1xP1");
}

static ActionSpec parse_action(const ordered_json& j, const Model& m) {
  if (!j.is_object()) throw ConfigError("action: expected object");
  std::string group = j.value("group", "");
  try {
    if (group == "su2") {
      ActionSpec a = ActionSpec::su2_diagonal();
      a.validate_against(m);
      return a;
    }
    if (group == "circle" || group == "torus") {
      if (!j.contains("weights") || !j["weights"].is_array())
        throw ConfigError("action.weights: expected array of rows");
      std::vector<std::vector<long long>> rows;
      for (const auto& row : j["weights"]) {
        if (!row.is_array()) throw ConfigError("action.weights: expected array of rows");
        std::vector<long long> r;
        for (const auto& v : row) r.push_back(v.get<long long>());
        rows.push_back(std::move(r));
      }
      std::vector<Rational> shift;
      if (j.contains("shift")) {
        if (!j["shift"].is_array()) throw ConfigError("action.shift: expected array");
        for (const auto& v : j["shift"]) shift.push_back(parse_rational_field(v, "action.shift"));
      } else {
        shift.assign(rows.size(), Rational(0));
      }
      if (group == "circle") {
        if (rows.size() != 1 || shift.size() != 1)
          throw ConfigError("action: circle takes one weight row and one shift");
        ActionSpec a = ActionSpec::circle(rows[0], shift[0]);
        a.validate_against(m);
        return a;
      }
      ActionSpec a = ActionSpec::torus(rows, shift);
      a.validate_against(m);
      return a;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("action: ") + e.what());
  }
  throw ConfigError("action.group: expected circle, torus, or su2");
}

static Weight parse_weight(const ordered_json& j, const ActionSpec& a) {
  std::vector<long long> comp;
  if (j.is_number_integer()) comp.push_back(j.get<long long>());
  else if (j.is_array())
    for (const auto& v : j) comp.push_back(v.get<long long>());
  else throw ConfigError("weight: expected integer or array of integers");
  Weight w = Weight::vec(comp);
  try {
    validate_weight(a.group, w);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("weight: ") + e.what());
  }
  return w;
}

static Point parse_point(const ordered_json& jin, const Model& m, size_t index, std::string& id) {
  // bare strings are shorthand for {"name": ...}
  ordered_json j = jin.is_string() ? ordered_json{{"name", jin.get<std::string>()}} : jin;
  if (!j.is_object()) throw ConfigError("points: expected objects or name strings");
  id = "p" + std::to_string(index);
  try {
    if (j.contains("name")) {
      std::string name = j["name"].get<std::string>();
      id = name;
      if (name == "north") return Point::north(m.factors);
      if (name == "south") return Point::south(m.factors);
      if (name.rfind("t=", 0) == 0) {
        // one height applied to every factor
        Rational t = Rational::parse(name.substr(2));
        return Point::from_t(std::vector<Rational>(static_cast<size_t>(m.factors), t));
      }
      if (name == "offdiag-sample" || name == "offdiag") {
        // rational points with distinct heights on the two factors,
        // (z0,z1) = (3,4)/5 and (12,5)/13
        if (m.factors != 2) throw ConfigError("points: offdiag-sample needs a two-factor model");
        Point p;
        FactorPoint f0;
        f0.z0 = 0.6;
        f0.z1 = 0.8;
        f0.t_exact = Rational(16, 25);
        FactorPoint f1;
        f1.z0 = 12.0 / 13.0;
        f1.z1 = 5.0 / 13.0;
        f1.t_exact = Rational(25, 169);
        p.f = {f0, f1};
        return p;
      }
      throw ConfigError("points: unknown name " + name);
    }
    if (j.contains("t")) {
      if (!j["t"].is_array()) throw ConfigError("points.t: expected array");
      std::vector<Rational> ts;
      for (const auto& v : j["t"]) ts.push_back(parse_rational_field(v, "points.t"));
      if (static_cast<int>(ts.size()) != m.factors)
        throw ConfigError("points.t: entry count must match factor count");
      id = "t=";
      for (size_t i = 0; i < ts.size(); ++i) id += (i ? "|" : "") + ts[i].str();
      return Point::from_t(ts);
    }
    if (j.contains("hom")) {
      if (!j["hom"].is_array() || static_cast<int>(j["hom"].size()) != m.factors)
        throw ConfigError("points.hom: expected one [z0,z1] pair per factor");
      Point p;
      for (const auto& fac : j["hom"]) {
        if (!fac.is_array() || fac.size() != 2) throw ConfigError("points.hom: expected [z0,z1]");
        FactorPoint fp;
        auto cplx = [](const ordered_json& c) -> std::complex<double> {
          if (!c.is_array() || c.size() != 2) throw ConfigError("points.hom: expected [re,im]");
          return {c[0].get<double>(), c[1].get<double>()};
        };
        fp.z0 = cplx(fac[0]);
        fp.z1 = cplx(fac[1]);
        p.f.push_back(fp);
      }
      validate_point(m, p);
      return p;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("points: ") + e.what());
  }
  throw ConfigError("points: expected one of name / t / hom");
}

ExperimentConfig parse_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  if (j.value("schema", 0) != 1) throw ConfigError("config: schema must be 1");
  ExperimentConfig c;
  c.raw = text;
  if (!j.contains("task")) throw ConfigError("config: missing task");
  c.task = parse_task(j["task"].get<std::string>());
  if (c.task == Task::Verify) {
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
    return c;
  }
  if (!j.contains("model")) throw ConfigError("config: missing model");
  c.model = parse_model(j["model"]);
  if (!j.contains("action")) throw ConfigError("config: missing action");
  c.action = parse_action(j["action"], c.model);
  if (j.contains("weight")) c.weight = parse_weight(j["weight"], c.action);
  int kspecs = (j.contains("k") ? 1 : 0) + (j.contains("k_list") ? 1 : 0) +
               (j.contains("k_range") ? 1 : 0);
  if (kspecs != 1) throw ConfigError("config: give exactly one of k, k_list, k_range");
  if (j.contains("k")) c.ks = {j["k"].get<long long>()};
  if (j.contains("k_list"))
    for (const auto& v : j["k_list"]) c.ks.push_back(v.get<long long>());
  if (j.contains("k_range")) {
    const auto& r = j["k_range"];
    long long from = r.value("from", 0LL), to = r.value("to", -1LL), step = r.value("step", 1LL);
    if (step <= 0 || to < from) throw ConfigError("config.k_range: need from <= to and step > 0");
    for (long long k = from; k <= to; k += step) c.ks.push_back(k);
  }
  if (c.ks.empty()) throw ConfigError("config: empty k set");
  for (long long k : c.ks)
    if (k < 0) throw ConfigError("config: k must be >= 0");
  if (j.contains("points"))
    for (const auto& v : j["points"]) {
      std::string id;
      c.points.push_back(parse_point(v, c.model, c.points.size(), id));
      c.point_ids.push_back(id);
    }
  if (j.contains("series")) c.series = j["series"].get<std::string>();
  if (c.series != "density" && c.series != "multiplicity" && c.series != "ladder")
    throw ConfigError("config.series: expected density, multiplicity, or ladder");
  if (j.contains("ladder")) c.ladder = j["ladder"].get<bool>();
  if (j.contains("grid")) c.grid = j["grid"].get<int>();
  if (c.grid < 2 || c.grid > 100000) throw ConfigError("config.grid: out of range");
  if (j.contains("order")) c.order = j["order"].get<int>();
  if (c.order < 1 || c.order > 4096) throw ConfigError("config.order: out of range");
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  if (c.threads < 1 || c.threads > 256) throw ConfigError("config.threads: out of range");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace ebk
