#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "tinpc/bounds.hpp"
#include "tinpc/bpc.hpp"
#include "tinpc/cli.hpp"
#include "tinpc/gdof.hpp"
#include "tinpc/opc.hpp"
#include "tinpc/rate.hpp"
#include "tinpc/search.hpp"

namespace py = pybind11;

// Rational <-> fractions.Fraction (also accepts int and str on the way in).
namespace pybind11::detail {
template <>
struct type_caster<tinpc::Rational> {
  PYBIND11_TYPE_CASTER(tinpc::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    if (PyBool_Check(src.ptr())) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = tinpc::Rational::parse(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::int_>(src) || py::hasattr(src, "denominator")) {
        const std::string num = py::str(src.attr("numerator"));
        const std::string den = py::str(src.attr("denominator"));
        value = tinpc::Rational::parse(den == "1" ? num : num + "/" + den);
        return true;
      }
    } catch (const std::invalid_argument&) {
      return false;
    }
    return false;
  }

  static handle cast(const tinpc::Rational& r, return_value_policy, handle) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(r.numerator_string())), py::int_(py::str(r.denominator_string()))).release();
  }
};

// PowerAllocation <-> list of Fraction | None (None is Off).
template <>
struct type_caster<tinpc::PowerAllocation> {
  PYBIND11_TYPE_CASTER(tinpc::PowerAllocation, const_name("list[fractions.Fraction | None]"));

  bool load(handle src, bool convert) {
    if (py::isinstance<py::str>(src)) {
      value = tinpc::parse_allocation(src.cast<std::string>());
      return true;
    }
    if (!py::isinstance<py::sequence>(src)) return false;
    std::vector<tinpc::PowerLevel> levels;
    for (handle item : py::reinterpret_borrow<py::sequence>(src)) {
      if (item.is_none()) {
        levels.push_back(tinpc::PowerLevel::off());
        continue;
      }
      make_caster<tinpc::Rational> r;
      if (!r.load(item, convert)) return false;
      levels.push_back(tinpc::PowerLevel::at(cast_op<tinpc::Rational>(r)));
    }
    value = tinpc::PowerAllocation(std::move(levels));
    return true;
  }

  static handle cast(const tinpc::PowerAllocation& a, return_value_policy policy, handle parent) {
    py::list out;
    for (const auto& level : a.levels()) {
      if (level.is_off()) {
        out.append(py::none());
      } else {
        out.append(reinterpret_steal<object>(make_caster<tinpc::Rational>::cast(level.exponent(), policy, parent)));
      }
    }
    return out.release();
  }
};
}  // namespace pybind11::detail

namespace {

std::vector<std::size_t> users(tinpc::UserMask mask) { return tinpc::mask_to_users(mask); }

std::vector<std::vector<std::size_t>> user_lists(const std::vector<tinpc::UserMask>& masks) {
  std::vector<std::vector<std::size_t>> out;
  for (auto m : masks) out.push_back(users(m));
  return out;
}

py::dict certificate_dict(const tinpc::AggregateCertificate& c) {
  py::dict d;
  std::vector<std::size_t> order;
  for (auto u : c.order) order.push_back(u + 1);
  d["order"] = order;
  d["allocation"] = c.allocation;
  d["weighted_sum"] = c.weighted_sum;
  d["total_weight"] = c.total_weight;
  d["opc_multiplier"] = c.opc_multiplier;
  d["opc_value"] = c.opc_value;
  d["bpc_value"] = c.bpc_value;
  d["ratio_bound"] = c.ratio_bound;
  d["constant"] = c.constant;
  d["holds"] = c.holds();
  d["text"] = tinpc::describe(c);
  return d;
}

}  // namespace

PYBIND11_MODULE(_tinpc, m) {
  m.doc() = "GDoF power control under treating interference as noise";

  py::register_exception<tinpc::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<tinpc::PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<tinpc::EnumerationLimitError>(m, "EnumerationLimitError", PyExc_ValueError);

  py::class_<tinpc::Topology>(m, "Topology")
      .def(py::init<std::vector<std::vector<tinpc::Rational>>>(), py::arg("rows"))
      .def_static("parse", &tinpc::parse_topology, py::arg("text"))
      .def_property_readonly("size", &tinpc::Topology::size)
      .def("alpha", &tinpc::Topology::alpha, py::arg("receiver"), py::arg("transmitter"))
      .def("rows", &tinpc::Topology::rows)
      .def("to_text", &tinpc::Topology::to_text)
      .def("permuted", &tinpc::Topology::permuted, py::arg("order"))
      .def("__len__", &tinpc::Topology::size)
      .def("__eq__", [](const tinpc::Topology& a, const tinpc::Topology& b) { return a == b; })
      .def("__repr__", [](const tinpc::Topology& t) { return "Topology(K=" + std::to_string(t.size()) + ")"; });

  m.def("extremal_small", &tinpc::extremal_small, py::arg("k"));
  m.def("extremal_grid", &tinpc::extremal_grid, py::arg("m"));
  m.def("diagonal_topology", &tinpc::diagonal_topology, py::arg("strengths"));
  m.def("append_isolated_user", &tinpc::append_isolated_user, py::arg("t"), py::arg("eps"));
  m.def("random_topology", &tinpc::random_topology, py::arg("k"), py::arg("max_strength"), py::arg("granularity"),
        py::arg("seed"));

  m.def("sum_gdof", [](const tinpc::Topology& t, const tinpc::PowerAllocation& r) {
    const auto o = tinpc::sum_gdof(t, r);
    return py::make_tuple(o.per_user, o.total);
  }, py::arg("t"), py::arg("r"), "Per-user GDoF list and their sum.");
  m.def("normalize_power", &tinpc::normalize_power, py::arg("r"));
  m.def("kk_power_allocation", &tinpc::kk_power_allocation, py::arg("m"));

  m.def("solve_opc", [](const tinpc::Topology& t, bool all_optima) {
    tinpc::OpcOptions options;
    options.collect_all_optima = all_optima;
    const auto res = tinpc::solve_opc(t, options);
    py::dict d;
    d["value"] = res.value;
    d["allocation"] = res.allocation;
    d["gdof"] = res.outcome.per_user;
    d["active_set"] = users(res.active_set);
    if (all_optima) d["optimal_sets"] = user_lists(res.optimal_sets);
    return d;
  }, py::arg("t"), py::arg("all_optima") = false);
  m.def("solve_opc_grid", [](const tinpc::Topology& t, const tinpc::Rational& step, const tinpc::Rational& floor) {
    return tinpc::solve_opc_grid(t, step, floor);
  }, py::arg("t"), py::arg("step"), py::arg("floor"));
  m.def("is_strictly_positive_class", [](const tinpc::Topology& t) { return tinpc::is_strictly_positive_class(t); },
        py::arg("t"));
  m.def("solve_bpc_gdof", [](const tinpc::Topology& t) {
    const auto res = tinpc::solve_bpc_gdof(t);
    return py::make_tuple(res.value, user_lists(res.best_sets));
  }, py::arg("t"), "D_b and every maximizing set of users (1-based).");
  m.def("solve_bpc_rate", [](const tinpc::Topology& t, double p_db) {
    const auto res = tinpc::solve_bpc_rate(t, p_db);
    return py::make_tuple(res.value, user_lists(res.best_sets));
  }, py::arg("t"), py::arg("p_db"));
  m.def("ratio", [](const tinpc::Topology& t) { return tinpc::ratio(t); }, py::arg("t"));

  m.def("sum_rate", &tinpc::sum_rate, py::arg("t"), py::arg("p_db"), py::arg("r"));
  m.def("gain_sweep", [](const tinpc::Topology& t, const tinpc::PowerAllocation& r, const std::vector<double>& p) {
    std::vector<py::tuple> out;
    for (const auto& pt : tinpc::gain_sweep(t, r, p))
      out.push_back(py::make_tuple(pt.p_db, pt.r_sigma_proxy, pt.r_sigma_bpc, pt.gain));
    return out;
  }, py::arg("t"), py::arg("r"), py::arg("p_db"), "Rows of (p_db, proxy rate, BPC rate, gain).");

  m.def("bound_B", [](const tinpc::Topology& t, const tinpc::PowerAllocation& r, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> zero_based;
    for (auto u : order) {
      if (u == 0) throw py::value_error("users are 1-based");
      zero_based.push_back(u - 1);
    }
    return tinpc::bound_B(t, r, zero_based).bound;
  }, py::arg("t"), py::arg("r"), py::arg("ordered_users"));
  m.def("certificate_small_k", [](const tinpc::Topology& t, const tinpc::PowerAllocation& r) {
    return certificate_dict(tinpc::certificate_small_k(t, r));
  }, py::arg("t"), py::arg("r"));
  m.def("certificate_square", [](const tinpc::Topology& t, const tinpc::PowerAllocation& r, int mm) {
    return certificate_dict(tinpc::certificate_square(t, r, mm));
  }, py::arg("t"), py::arg("r"), py::arg("m"));

  m.def("local_search", [](std::size_t k, std::size_t budget, const tinpc::Rational& step, std::uint64_t seed,
                           const tinpc::Rational& max_strength, std::size_t threads) {
    tinpc::SearchOptions options;
    options.max_strength = max_strength;
    options.threads = threads;
    std::optional<tinpc::SearchReport> found;
    {
      py::gil_scoped_release release;
      found = tinpc::local_search(k, budget, step, seed, options);
    }
    const tinpc::SearchReport& rep = *found;
    py::dict d;
    d["best_ratio"] = rep.best_ratio;
    d["best_topology"] = rep.best_topology;
    d["evaluations"] = rep.evaluations;
    d["envelope_ok"] = rep.envelope_ok;
    d["known_gain_ok"] = rep.known_gain_ok;
    d["text"] = tinpc::to_text(rep);
    return d;
  }, py::arg("k"), py::arg("budget"), py::arg("step"), py::arg("seed"), py::arg("max_strength") = tinpc::Rational(3),
     py::arg("threads") = 1);

  m.def("run", [](std::vector<std::string> args) {
    args.insert(args.begin(), "tinpc");
    std::ostringstream out, err;
    const int status = tinpc::run(args, out, err);
    return py::make_tuple(status, out.str(), err.str());
  }, py::arg("args"), "Runs the command line; returns (status, stdout, stderr).");
}
