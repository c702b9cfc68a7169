#include "uavjam/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <thread>

#include "json.hpp"
#include "uavjam/analytic_single.hpp"

#ifndef UAVJAM_VERSION
#define UAVJAM_VERSION "0.0.0"
#endif

namespace uavjam {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kMaxRows = 1000000;

const char* mode_name(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::kAnalytic: return "analytic";
    case ScenarioMode::kSimulate: return "simulate";
    case ScenarioMode::kCompare: return "compare";
    case ScenarioMode::kOptimize: return "optimize";
  }
  return "analytic";
}

const char* model_name(JammerModel m) {
  return m == JammerModel::kMulti ? "multi" : "single";
}

const char* field_name(JammerField f) {
  return f == JammerField::kShared ? "shared" : "per_receiver";
}

// Pointer to the parameter a sweep axis drives; m_los is the one integer.
struct AxisTarget {
  double* real = nullptr;
  int* integer = nullptr;
};

AxisTarget axis_target(const std::string& name, Scenario& s) {
  static const std::map<std::string, std::function<AxisTarget(Scenario&)>>
      table = {
          {"d_tu", [](Scenario& x) { return AxisTarget{&x.placement.d_tu}; }},
          {"z_u", [](Scenario& x) { return AxisTarget{&x.placement.z_u}; }},
          {"theta_r",
           [](Scenario& x) { return AxisTarget{&x.placement.theta_r}; }},
          {"p_tx", [](Scenario& x) { return AxisTarget{&x.network.p_tx}; }},
          {"p_jam", [](Scenario& x) { return AxisTarget{&x.network.p_jam}; }},
          {"noise", [](Scenario& x) { return AxisTarget{&x.network.noise}; }},
          {"gamma_t",
           [](Scenario& x) { return AxisTarget{&x.network.gamma_t}; }},
          {"gamma_t_prime",
           [](Scenario& x) { return AxisTarget{&x.network.gamma_t_prime}; }},
          {"ell_r", [](Scenario& x) { return AxisTarget{&x.network.ell_r}; }},
          {"lambda_e",
           [](Scenario& x) { return AxisTarget{&x.network.lambda_e}; }},
          {"lambda_u",
           [](Scenario& x) { return AxisTarget{&x.network.lambda_u}; }},
          {"region_radius",
           [](Scenario& x) { return AxisTarget{&x.network.region_radius}; }},
          {"alpha_g2g",
           [](Scenario& x) { return AxisTarget{&x.network.alpha_g2g}; }},
          {"alpha_los",
           [](Scenario& x) { return AxisTarget{&x.env.alpha_los}; }},
          {"alpha_nlos",
           [](Scenario& x) { return AxisTarget{&x.env.alpha_nlos}; }},
          {"m_los",
           [](Scenario& x) { return AxisTarget{nullptr, &x.env.m_los}; }},
          {"zeta", [](Scenario& x) { return AxisTarget{&x.env.zeta}; }},
          {"nu", [](Scenario& x) { return AxisTarget{&x.env.nu}; }},
          {"mu", [](Scenario& x) { return AxisTarget{&x.env.mu}; }},
      };
  const auto it = table.find(name);
  return it == table.end() ? AxisTarget{} : it->second(s);
}

// --- parsing -------------------------------------------------------------

class Reader {
 public:
  explicit Reader(std::vector<Violation>& report) : report_(report) {}

  void fail(const std::string& path, const std::string& rule) {
    report_.push_back({path, rule});
  }

  void number(const json& v, const std::string& path, double& out) {
    if (!v.is_number()) return fail(path, "must be a number");
    out = v.get<double>();
  }

  void integer(const json& v, const std::string& path, int& out) {
    if (!v.is_number_integer()) return fail(path, "must be an integer");
    const auto x = v.get<std::int64_t>();
    if (x < -1000000000 || x > 1000000000) return fail(path, "out of range");
    out = static_cast<int>(x);
  }

  void count(const json& v, const std::string& path, std::uint64_t& out) {
    if (!v.is_number_unsigned()) {
      return fail(path, "must be a non-negative integer");
    }
    out = v.get<std::uint64_t>();
  }

  void text(const json& v, const std::string& path, std::string& out) {
    if (!v.is_string()) return fail(path, "must be a string");
    out = v.get<std::string>();
  }

  // Walks the members of `obj`, dispatching known keys and reporting the
  // rest.
  void object(const json& obj, const std::string& path,
              const std::map<std::string,
                             std::function<void(const json&, const std::string&)>>&
                  fields) {
    if (!obj.is_object()) return fail(path, "must be an object");
    for (const auto& [key, value] : obj.items()) {
      const std::string sub = path.empty() ? key : path + "." + key;
      const auto it = fields.find(key);
      if (it == fields.end()) {
        fail(sub, "unknown key");
        continue;
      }
      it->second(value, sub);
    }
  }

 private:
  std::vector<Violation>& report_;
};

using Handlers =
    std::map<std::string, std::function<void(const json&, const std::string&)>>;

void read_axis_values(Reader& r, const json& v, const std::string& path,
                      std::vector<double>& out) {
  if (v.is_array()) {
    if (v.empty()) return r.fail(path, "must not be empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        return r.fail(path + "[" + std::to_string(i) + "]", "must be a number");
      }
      out.push_back(v[i].get<double>());
    }
    return;
  }
  double from = 0.0, to = 0.0, step = 0.0;
  bool has_from = false, has_to = false, has_step = false;
  r.object(v, path,
           {{"from", [&](const json& x, const std::string& p) {
               has_from = true;
               r.number(x, p, from);
             }},
            {"to", [&](const json& x, const std::string& p) {
               has_to = true;
               r.number(x, p, to);
             }},
            {"step", [&](const json& x, const std::string& p) {
               has_step = true;
               r.number(x, p, step);
             }}});
  if (!v.is_object()) return;
  if (!has_from) r.fail(path + ".from", "required");
  if (!has_to) r.fail(path + ".to", "required");
  if (!has_step) r.fail(path + ".step", "required");
  if (!(has_from && has_to && has_step)) return;
  if (!(step > 0.0)) return r.fail(path + ".step", "step > 0");
  if (!(to >= from)) return r.fail(path, "to >= from");
  const double span = (to - from) / step;
  if (!(span < static_cast<double>(kMaxRows))) {
    return r.fail(path, "at most 1000000 values");
  }
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) out.push_back(from + i * step);
}

void read_grid_axis(Reader& r, const json& v, const std::string& path,
                    std::optional<GridAxis>& out) {
  GridAxis a;
  r.object(v, path,
           {{"lo", [&](const json& x, const std::string& p) { r.number(x, p, a.lo); }},
            {"hi", [&](const json& x, const std::string& p) { r.number(x, p, a.hi); }},
            {"points",
             [&](const json& x, const std::string& p) { r.integer(x, p, a.points); }}});
  out = a;
}

template <class Enum>
void read_choice(Reader& r, const json& v, const std::string& path,
                 const std::map<std::string, Enum>& choices, Enum& out) {
  std::string s;
  if (!v.is_string()) {
    r.fail(path, "must be a string");
    return;
  }
  s = v.get<std::string>();
  const auto it = choices.find(s);
  if (it == choices.end()) {
    std::string rule = "one of";
    for (const auto& [k, _] : choices) rule += " " + k;
    r.fail(path, rule);
    return;
  }
  out = it->second;
}

void read_document(Reader& r, const json& doc, Scenario& s) {
  Handlers top = {
      {"mode",
       [&](const json& v, const std::string& p) {
         read_choice<ScenarioMode>(r, v, p,
                                   {{"analytic", ScenarioMode::kAnalytic},
                                    {"simulate", ScenarioMode::kSimulate},
                                    {"compare", ScenarioMode::kCompare},
                                    {"optimize", ScenarioMode::kOptimize}},
                                   s.mode);
       }},
      {"model",
       [&](const json& v, const std::string& p) {
         read_choice<JammerModel>(
             r, v, p,
             {{"single", JammerModel::kSingle}, {"multi", JammerModel::kMulti}},
             s.model);
       }},
      {"environment",
       [&](const json& v, const std::string& p) {
         auto& e = s.env;
         r.object(v, p,
                  {{"alpha_los", [&](const json& x, const std::string& q) { r.number(x, q, e.alpha_los); }},
                   {"alpha_nlos", [&](const json& x, const std::string& q) { r.number(x, q, e.alpha_nlos); }},
                   {"m_los", [&](const json& x, const std::string& q) { r.integer(x, q, e.m_los); }},
                   {"zeta", [&](const json& x, const std::string& q) { r.number(x, q, e.zeta); }},
                   {"nu", [&](const json& x, const std::string& q) { r.number(x, q, e.nu); }},
                   {"mu", [&](const json& x, const std::string& q) { r.number(x, q, e.mu); }}});
       }},
      {"network",
       [&](const json& v, const std::string& p) {
         auto& n = s.network;
         r.object(v, p,
                  {{"p_tx", [&](const json& x, const std::string& q) { r.number(x, q, n.p_tx); }},
                   {"p_jam", [&](const json& x, const std::string& q) { r.number(x, q, n.p_jam); }},
                   {"noise", [&](const json& x, const std::string& q) { r.number(x, q, n.noise); }},
                   {"gamma_t", [&](const json& x, const std::string& q) { r.number(x, q, n.gamma_t); }},
                   {"gamma_t_prime", [&](const json& x, const std::string& q) { r.number(x, q, n.gamma_t_prime); }},
                   {"ell_r", [&](const json& x, const std::string& q) { r.number(x, q, n.ell_r); }},
                   {"lambda_e", [&](const json& x, const std::string& q) { r.number(x, q, n.lambda_e); }},
                   {"lambda_u", [&](const json& x, const std::string& q) { r.number(x, q, n.lambda_u); }},
                   {"region_radius", [&](const json& x, const std::string& q) { r.number(x, q, n.region_radius); }},
                   {"alpha_g2g", [&](const json& x, const std::string& q) { r.number(x, q, n.alpha_g2g); }}});
       }},
      {"placement",
       [&](const json& v, const std::string& p) {
         auto& pl = s.placement;
         r.object(v, p,
                  {{"d_tu", [&](const json& x, const std::string& q) { r.number(x, q, pl.d_tu); }},
                   {"z_u", [&](const json& x, const std::string& q) { r.number(x, q, pl.z_u); }},
                   {"theta_r", [&](const json& x, const std::string& q) { r.number(x, q, pl.theta_r); }}});
       }},
      {"sweep",
       [&](const json& v, const std::string& p) {
         if (!v.is_object()) return r.fail(p, "must be an object");
         for (const auto& [key, axis] : v.items()) {
           const std::string sub = p + "." + key;
           const auto& names = sweep_axis_names();
           if (std::find(names.begin(), names.end(), key) == names.end()) {
             r.fail(sub, "unknown sweep axis");
             continue;
           }
           SweepAxis a{key, {}};
           read_axis_values(r, axis, sub, a.values);
           if (key == "m_los") {
             for (double x : a.values) {
               if (x != std::floor(x)) {
                 r.fail(sub, "m_los values must be integers");
                 break;
               }
             }
           }
           s.sweep.push_back(std::move(a));
         }
       }},
      {"quadrature",
       [&](const json& v, const std::string& p) {
         auto& q = s.quad;
         r.object(v, p,
                  {{"rel_tol", [&](const json& x, const std::string& k) { r.number(x, k, q.rel_tol); }},
                   {"abs_tol", [&](const json& x, const std::string& k) { r.number(x, k, q.abs_tol); }},
                   {"radial_truncation", [&](const json& x, const std::string& k) { r.number(x, k, q.radial_truncation); }},
                   {"max_subdivisions", [&](const json& x, const std::string& k) { r.integer(x, k, q.max_subdivisions); }}});
       }},
      {"monte_carlo",
       [&](const json& v, const std::string& p) {
         auto& m = s.mc;
         r.object(v, p,
                  {{"realizations", [&](const json& x, const std::string& k) { r.count(x, k, m.realizations); }},
                   {"seed", [&](const json& x, const std::string& k) { r.count(x, k, m.seed); }},
                   {"threads",
                    [&](const json& x, const std::string& k) {
                      std::uint64_t t = 1;
                      r.count(x, k, t);
                      if (t > 1024) return r.fail(k, "threads <= 1024");
                      m.threads = static_cast<unsigned>(t);
                    }},
                   {"jammer_field",
                    [&](const json& x, const std::string& k) {
                      read_choice<JammerField>(
                          r, x, k,
                          {{"per_receiver", JammerField::kPerReceiver},
                           {"shared", JammerField::kShared}},
                          m.field);
                    }}});
       }},
      {"search",
       [&](const json& v, const std::string& p) {
         r.object(v, p,
                  {{"d_tu", [&](const json& x, const std::string& k) { read_grid_axis(r, x, k, s.search_d_tu); }},
                   {"z_u", [&](const json& x, const std::string& k) { read_grid_axis(r, x, k, s.search_z_u); }},
                   {"refine_iterations", [&](const json& x, const std::string& k) { r.integer(x, k, s.refine_iterations); }}});
       }},
      {"output",
       [&](const json& v, const std::string& p) { r.text(v, p, s.output); }},
      {"version",
       [&](const json& v, const std::string& p) {
         std::string ignored;
         r.text(v, p, ignored);
       }},
  };
  r.object(doc, "", top);
}

std::string prefixed(const char* section, const std::string& field) {
  return std::string(section) + "." + field;
}

// Applies row `index` of the sweep to a copy of the base scenario.
Scenario resolve_row(const Scenario& base, std::size_t index,
                     std::vector<double>* axis_values) {
  Scenario s = base;
  std::vector<double> values(base.sweep.size());
  for (std::size_t k = base.sweep.size(); k-- > 0;) {
    const auto& axis = base.sweep[k];
    values[k] = axis.values[index % axis.values.size()];
    index /= axis.values.size();
  }
  for (std::size_t k = 0; k < base.sweep.size(); ++k) {
    const AxisTarget t = axis_target(base.sweep[k].name, s);
    if (t.real) *t.real = values[k];
    if (t.integer) *t.integer = static_cast<int>(values[k]);
  }
  if (axis_values) *axis_values = std::move(values);
  return s;
}

PlacementSearchSpec search_spec(const Scenario& s) {
  PlacementSearchSpec spec = default_search(s.network);
  if (s.search_d_tu) spec.d_tu = *s.search_d_tu;
  if (s.search_z_u) spec.z_u = *s.search_z_u;
  spec.refine_iterations = s.refine_iterations;
  spec.objective = s.model == JammerModel::kMulti ? PlacementObjective::kMulti
                                                   : PlacementObjective::kSingle;
  spec.threads = s.mc.threads;
  return spec;
}

void check_resolved(const Scenario& base, std::vector<Violation>& report) {
  std::set<std::pair<std::string, std::string>> seen;
  auto add = [&](const char* section, const std::vector<Violation>& v) {
    for (const auto& x : v) {
      const std::string field = prefixed(section, x.field);
      if (seen.insert({field, x.rule}).second) report.push_back({field, x.rule});
    }
  };
  const std::size_t n = row_count(base);
  for (std::size_t i = 0; i < n; ++i) {
    const Scenario s = resolve_row(base, i, nullptr);
    add("environment", check(s.env));
    add("network", check(s.network));
    add("placement", check(s.placement));
    add("search", check(search_spec(s)));
  }
  for (const auto& msg : check(base.quad)) {
    report.push_back({"quadrature", msg});
  }
  if (base.mc.realizations == 0 &&
      (base.mode == ScenarioMode::kSimulate ||
       base.mode == ScenarioMode::kCompare)) {
    report.push_back({"monte_carlo.realizations", "realizations >= 1"});
  }
  if (base.mc.threads == 0) {
    report.push_back({"monte_carlo.threads", "threads >= 1"});
  }
}

// --- output -------------------------------------------------------------

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json axis_json(const GridAxis& a) {
  return json{{"lo", a.lo}, {"hi", a.hi}, {"points", a.points}};
}

ResultRow run_row(const Scenario& s, std::vector<double> axis_values) {
  ResultRow row;
  row.axis_values = std::move(axis_values);
  const bool multi = s.model == JammerModel::kMulti;
  const MultiJammerSettings field{s.network.lambda_u, s.placement.z_u, s.quad};
  try {
    if (s.mode == ScenarioMode::kOptimize) {
      const PlacementSearchSpec spec = search_spec(s);
      const OptimalPlacement best =
          multi ? optimize_height_multi(spec, field, s.network, s.env)
                : optimize_placement(spec, s.network, s.env, s.quad);
      if (!multi) row.d_tu_star = best.d_tu_star;
      row.z_u_star = best.z_u_star;
      row.p_se = best.p_se_star;
      row.evaluations = best.evaluations;
      return row;
    }
    if (s.mode != ScenarioMode::kSimulate) {
      const SecrecyResult r =
          multi ? secrecy_multi(field, s.network, s.env)
                : p_secrecy(s.placement, s.network, s.env, s.quad);
      row.p_s = r.p_s;
      row.p_e = r.p_e;
      row.p_se = r.p_se;
    }
    if (s.mode != ScenarioMode::kAnalytic) {
      const MonteCarloEstimate e =
          multi ? simulate_secrecy_multi(field, s.network, s.env, s.mc)
                : simulate_secrecy(s.placement, s.network, s.env, s.mc);
      row.mc_mean = e.mean;
      row.mc_std_error = e.std_error;
    }
    if (s.mode == ScenarioMode::kCompare) {
      row.check = std::abs(*row.p_se - *row.mc_mean) <= 4.0 * *row.mc_std_error
                      ? "PASS"
                      : "FAIL";
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

const std::vector<std::string>& sweep_axis_names() {
  static const std::vector<std::string> names = {
      "d_tu",      "z_u",      "theta_r",       "p_tx",      "p_jam",
      "noise",     "gamma_t",  "gamma_t_prime", "ell_r",     "lambda_e",
      "lambda_u",  "region_radius", "alpha_g2g", "alpha_los", "alpha_nlos",
      "m_los",     "zeta",     "nu",            "mu"};
  return names;
}

const char* library_version() { return UAVJAM_VERSION; }

std::size_t row_count(const Scenario& scenario) {
  std::size_t n = 1;
  for (const auto& a : scenario.sweep) {
    if (a.values.empty()) return 0;
    if (n > kMaxRows / a.values.size() + 1) return kMaxRows + 1;
    n *= a.values.size();
  }
  return n;
}

std::optional<Scenario> parse_scenario(std::string_view text,
                                       std::vector<Violation>& report) {
  const std::size_t before = report.size();
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    report.push_back({"<document>", std::string("not valid JSON: ") + e.what()});
    return std::nullopt;
  }
  Scenario s;
  Reader reader(report);
  read_document(reader, doc, s);
  const std::size_t rows = row_count(s);
  if (rows > kMaxRows) {
    report.push_back({"sweep", "at most 1000000 rows"});
    return std::nullopt;
  }
  check_resolved(s, report);
  if (report.size() != before) return std::nullopt;
  return s;
}

std::vector<Violation> validate_config(std::string_view text) {
  std::vector<Violation> report;
  parse_scenario(text, report);
  return report;
}

std::vector<ResultRow> run_scenario(const Scenario& scenario) {
  const std::size_t n = row_count(scenario);
  std::vector<ResultRow> rows(n);
  auto work = [&](std::size_t i) {
    std::vector<double> values;
    const Scenario s = resolve_row(scenario, i, &values);
    rows[i] = run_row(s, std::move(values));
  };
  // Analytic rows are cheap and independent; sampled and optimized rows
  // parallelize internally instead.
  const unsigned threads = std::max(1u, scenario.mc.threads);
  if (scenario.mode != ScenarioMode::kAnalytic || threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(threads, n); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    }
  }
  return rows;
}

void write_csv(std::ostream& os, const Scenario& scenario,
               const std::vector<ResultRow>& rows) {
  for (const auto& a : scenario.sweep) os << a.name << ',';
  os << "mode,model,p_s,p_e,p_se,mc_mean,mc_std_error,d_tu_star,z_u_star,"
        "evaluations,check,status,message\n";
  auto cell = [&](const std::optional<double>& v) {
    if (v) os << format_number(*v);
    os << ',';
  };
  for (const auto& r : rows) {
    for (double v : r.axis_values) os << format_number(v) << ',';
    os << mode_name(scenario.mode) << ',' << model_name(scenario.model) << ',';
    cell(r.p_s);
    cell(r.p_e);
    cell(r.p_se);
    cell(r.mc_mean);
    cell(r.mc_std_error);
    cell(r.d_tu_star);
    cell(r.z_u_star);
    if (r.evaluations) os << *r.evaluations;
    os << ',' << r.check << ',' << (r.error.empty() ? "ok" : "error") << ','
       << csv_quote(r.error) << '\n';
  }
}

std::string manifest_json(const Scenario& s) {
  json doc;
  doc["version"] = library_version();
  doc["mode"] = mode_name(s.mode);
  doc["model"] = model_name(s.model);
  doc["environment"] = {{"alpha_los", s.env.alpha_los},
                        {"alpha_nlos", s.env.alpha_nlos},
                        {"m_los", s.env.m_los},
                        {"zeta", s.env.zeta},
                        {"nu", s.env.nu},
                        {"mu", s.env.mu}};
  doc["network"] = {{"p_tx", s.network.p_tx},
                    {"p_jam", s.network.p_jam},
                    {"noise", s.network.noise},
                    {"gamma_t", s.network.gamma_t},
                    {"gamma_t_prime", s.network.gamma_t_prime},
                    {"ell_r", s.network.ell_r},
                    {"lambda_e", s.network.lambda_e},
                    {"lambda_u", s.network.lambda_u},
                    {"region_radius", s.network.region_radius},
                    {"alpha_g2g", s.network.alpha_g2g}};
  doc["placement"] = {{"d_tu", s.placement.d_tu},
                      {"z_u", s.placement.z_u},
                      {"theta_r", s.placement.theta_r}};
  json sweep = json::object();
  for (const auto& a : s.sweep) sweep[a.name] = a.values;
  doc["sweep"] = sweep;
  doc["quadrature"] = {{"rel_tol", s.quad.rel_tol},
                       {"abs_tol", s.quad.abs_tol},
                       {"radial_truncation", s.quad.radial_truncation},
                       {"max_subdivisions", s.quad.max_subdivisions}};
  doc["monte_carlo"] = {{"realizations", s.mc.realizations},
                        {"seed", s.mc.seed},
                        {"threads", s.mc.threads},
                        {"jammer_field", field_name(s.mc.field)}};
  json search = json::object();
  if (s.search_d_tu) search["d_tu"] = axis_json(*s.search_d_tu);
  if (s.search_z_u) search["z_u"] = axis_json(*s.search_z_u);
  search["refine_iterations"] = s.refine_iterations;
  doc["search"] = search;
  doc["output"] = s.output;
  return doc.dump(2) + "\n";
}

}  // namespace uavjam
