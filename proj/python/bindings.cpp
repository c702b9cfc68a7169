#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "uavjam/analytic_multi.hpp"
#include "uavjam/analytic_single.hpp"
#include "uavjam/montecarlo.hpp"
#include "uavjam/optimizer.hpp"
#include "uavjam/scenario.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace uavjam;

namespace {

template <class T>
std::string fields_repr(const char* name, const T& obj, py::handle cls) {
  std::ostringstream os;
  os << name << "(";
  bool first = true;
  for (auto item : cls.attr("__dict__").cast<py::dict>()) {
    const auto key = item.first.cast<std::string>();
    if (key.rfind("_", 0) == 0) continue;
    if (!py::isinstance(item.second, py::module_::import("builtins").attr("property"))) {
      continue;
    }
    os << (first ? "" : ", ") << key << "="
       << py::repr(py::cast(obj).attr(key.c_str())).template cast<std::string>();
    first = false;
  }
  os << ")";
  return os.str();
}

std::vector<std::pair<std::string, std::string>> as_pairs(
    const std::vector<Violation>& v) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& x : v) out.emplace_back(x.field, x.rule);
  return out;
}

}  // namespace

PYBIND11_MODULE(_uavjam, m) {
  m.doc() = "Secrecy analysis and simulation for UAV jammer placement";
  m.attr("__version__") = library_version();

  py::enum_<LinkEnvironment>(m, "LinkEnvironment")
      .value("LOS", LinkEnvironment::kLos)
      .value("NLOS", LinkEnvironment::kNlos);
  py::enum_<JammerField>(m, "JammerField")
      .value("PER_RECEIVER", JammerField::kPerReceiver)
      .value("SHARED", JammerField::kShared);
  py::enum_<PlacementObjective>(m, "PlacementObjective")
      .value("SINGLE", PlacementObjective::kSingle)
      .value("MULTI", PlacementObjective::kMulti);

  py::class_<EnvironmentParams> env(m, "EnvironmentParams");
  env.def(py::init<>())
      .def_readwrite("alpha_los", &EnvironmentParams::alpha_los)
      .def_readwrite("alpha_nlos", &EnvironmentParams::alpha_nlos)
      .def_readwrite("m_los", &EnvironmentParams::m_los)
      .def_readwrite("zeta", &EnvironmentParams::zeta)
      .def_readwrite("nu", &EnvironmentParams::nu)
      .def_readwrite("mu", &EnvironmentParams::mu)
      .def("__repr__", [env](const EnvironmentParams& e) {
        return fields_repr("EnvironmentParams", e, env);
      });

  py::class_<NetworkConfig> net(m, "NetworkConfig");
  net.def(py::init<>())
      .def_readwrite("p_tx", &NetworkConfig::p_tx)
      .def_readwrite("p_jam", &NetworkConfig::p_jam)
      .def_readwrite("noise", &NetworkConfig::noise)
      .def_readwrite("gamma_t", &NetworkConfig::gamma_t)
      .def_readwrite("gamma_t_prime", &NetworkConfig::gamma_t_prime)
      .def_readwrite("ell_r", &NetworkConfig::ell_r)
      .def_readwrite("lambda_e", &NetworkConfig::lambda_e)
      .def_readwrite("lambda_u", &NetworkConfig::lambda_u)
      .def_readwrite("region_radius", &NetworkConfig::region_radius)
      .def_readwrite("alpha_g2g", &NetworkConfig::alpha_g2g)
      .def("__repr__", [net](const NetworkConfig& c) {
        return fields_repr("NetworkConfig", c, net);
      });

  py::class_<JammerPlacement>(m, "JammerPlacement")
      .def(py::init<>())
      .def(py::init([](double d_tu, double z_u, double theta_r) {
             return JammerPlacement{d_tu, z_u, theta_r};
           }),
           "d_tu"_a, "z_u"_a, "theta_r"_a = JammerPlacement{}.theta_r)
      .def_readwrite("d_tu", &JammerPlacement::d_tu)
      .def_readwrite("z_u", &JammerPlacement::z_u)
      .def_readwrite("theta_r", &JammerPlacement::theta_r);

  py::class_<QuadratureSettings>(m, "QuadratureSettings")
      .def(py::init<>())
      .def_readwrite("rel_tol", &QuadratureSettings::rel_tol)
      .def_readwrite("abs_tol", &QuadratureSettings::abs_tol)
      .def_readwrite("radial_truncation", &QuadratureSettings::radial_truncation)
      .def_readwrite("max_subdivisions", &QuadratureSettings::max_subdivisions);

  py::class_<MultiJammerSettings>(m, "MultiJammerSettings")
      .def(py::init<>())
      .def(py::init([](double lambda_u, double z_u, const QuadratureSettings& q) {
             return MultiJammerSettings{lambda_u, z_u, q};
           }),
           "lambda_u"_a, "z_u"_a, "quad"_a = QuadratureSettings{})
      .def_readwrite("lambda_u", &MultiJammerSettings::lambda_u)
      .def_readwrite("z_u", &MultiJammerSettings::z_u)
      .def_readwrite("quad", &MultiJammerSettings::quad);

  py::class_<MonteCarloSettings>(m, "MonteCarloSettings")
      .def(py::init<>())
      .def_readwrite("realizations", &MonteCarloSettings::realizations)
      .def_readwrite("seed", &MonteCarloSettings::seed)
      .def_readwrite("threads", &MonteCarloSettings::threads)
      .def_readwrite("field", &MonteCarloSettings::field);

  py::class_<SecrecyResult>(m, "SecrecyResult")
      .def_readonly("p_s", &SecrecyResult::p_s)
      .def_readonly("p_e", &SecrecyResult::p_e)
      .def_readonly("p_se", &SecrecyResult::p_se)
      .def("__repr__", [](const SecrecyResult& r) {
        std::ostringstream os;
        os.precision(10);
        os << "SecrecyResult(p_s=" << r.p_s << ", p_e=" << r.p_e << ", p_se=" << r.p_se
           << ")";
        return os.str();
      });

  py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
      .def_readonly("mean", &MonteCarloEstimate::mean)
      .def_readonly("std_error", &MonteCarloEstimate::std_error)
      .def_readonly("n_realizations", &MonteCarloEstimate::n_realizations)
      .def_readonly("successes", &MonteCarloEstimate::successes);

  py::class_<GridAxis>(m, "GridAxis")
      .def(py::init([](double lo, double hi, int points) {
             return GridAxis{lo, hi, points};
           }),
           "lo"_a, "hi"_a, "points"_a)
      .def_readwrite("lo", &GridAxis::lo)
      .def_readwrite("hi", &GridAxis::hi)
      .def_readwrite("points", &GridAxis::points);

  py::class_<PlacementSearchSpec>(m, "PlacementSearchSpec")
      .def(py::init<>())
      .def_readwrite("d_tu", &PlacementSearchSpec::d_tu)
      .def_readwrite("z_u", &PlacementSearchSpec::z_u)
      .def_readwrite("refine_iterations", &PlacementSearchSpec::refine_iterations)
      .def_readwrite("objective", &PlacementSearchSpec::objective)
      .def_readwrite("threads", &PlacementSearchSpec::threads);

  py::class_<OptimalPlacement>(m, "OptimalPlacement")
      .def_readonly("d_tu_star", &OptimalPlacement::d_tu_star)
      .def_readonly("z_u_star", &OptimalPlacement::z_u_star)
      .def_readonly("p_se_star", &OptimalPlacement::p_se_star)
      .def_readonly("evaluations", &OptimalPlacement::evaluations);

  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
  py::register_exception<ObjectiveError>(m, "ObjectiveError", PyExc_RuntimeError);

  m.def("q_function", &q_function, "x"_a);
  m.def("horizontal_distance", &horizontal_distance, "d_tu"_a, "ell"_a, "theta"_a);
  m.def("los_probability", &los_probability, "d"_a, "z_u"_a,
        "env"_a = EnvironmentParams{});
  m.def("p_success", &p_success, "placement"_a, "cfg"_a = NetworkConfig{},
        "env"_a = EnvironmentParams{});
  m.def("p_secrecy", &p_secrecy, "placement"_a, "cfg"_a = NetworkConfig{},
        "env"_a = EnvironmentParams{}, "quad"_a = QuadratureSettings{},
        py::call_guard<py::gil_scoped_release>());
  m.def("p_secrecy_asymptotic", &p_secrecy_asymptotic, "placement"_a,
        "cfg"_a = NetworkConfig{}, "env"_a = EnvironmentParams{});
  m.def("secrecy_multi", &secrecy_multi, "settings"_a, "cfg"_a = NetworkConfig{},
        "env"_a = EnvironmentParams{}, py::call_guard<py::gil_scoped_release>());
  m.def("p_secrecy_multi", &p_secrecy_multi, "settings"_a, "cfg"_a = NetworkConfig{},
        "env"_a = EnvironmentParams{}, py::call_guard<py::gil_scoped_release>());
  m.def("p_secrecy_multi_asymptotic", &p_secrecy_multi_asymptotic, "settings"_a,
        "cfg"_a = NetworkConfig{}, "env"_a = EnvironmentParams{});
  m.def("p_secrecy_multi_closed_form", &p_secrecy_multi_closed_form, "settings"_a,
        "cfg"_a = NetworkConfig{}, "env"_a = EnvironmentParams{});
  m.def("simulate_secrecy", &simulate_secrecy, "placement"_a, "cfg"_a = NetworkConfig{},
        "env"_a = EnvironmentParams{}, "mc"_a = MonteCarloSettings{},
        py::call_guard<py::gil_scoped_release>());
  m.def("simulate_secrecy_multi", &simulate_secrecy_multi, "settings"_a,
        "cfg"_a = NetworkConfig{}, "env"_a = EnvironmentParams{},
        "mc"_a = MonteCarloSettings{}, py::call_guard<py::gil_scoped_release>());
  m.def("default_search", &default_search, "cfg"_a = NetworkConfig{});
  m.def("optimize_placement", &optimize_placement, "spec"_a, "cfg"_a = NetworkConfig{},
        "env"_a = EnvironmentParams{}, "quad"_a = QuadratureSettings{},
        py::call_guard<py::gil_scoped_release>());
  m.def("optimize_height_multi", &optimize_height_multi, "spec"_a, "settings"_a,
        "cfg"_a = NetworkConfig{}, "env"_a = EnvironmentParams{},
        py::call_guard<py::gil_scoped_release>());

  m.def("validate_config",
        [](const std::string& text) { return as_pairs(validate_config(text)); },
        "text"_a, "List of (field, rule) pairs; empty when the scenario is valid.");
  m.def(
      "run_scenario",
      [](const std::string& text) {
        std::vector<Violation> report;
        const auto s = parse_scenario(text, report);
        if (!s) {
          std::string msg = "invalid scenario:";
          for (const auto& v : report) msg += " " + v.field + " (" + v.rule + ");";
          throw py::value_error(msg);
        }
        std::ostringstream os;
        {
          py::gil_scoped_release release;
          write_csv(os, *s, run_scenario(*s));
        }
        return os.str();
      },
      "text"_a, "Runs a JSON scenario and returns its CSV table.");
}
