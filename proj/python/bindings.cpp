#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gasket/codespace.hpp"
#include "gasket/dimension.hpp"
#include "gasket/error.hpp"
#include "gasket/geometry.hpp"
#include "gasket/numeric.hpp"
#include "gasket/variation.hpp"

namespace py = pybind11;
using namespace gasket;

namespace {

int compare(const std::string& a, const std::string& b) {
  const auto c = compare_addresses(Address::parse(a), Address::parse(b));
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::vector<std::string> partition_text(int n) {
  std::vector<std::string> out;
  for (const Address& a : canonical_partition(n)) out.push_back(a.to_string());
  return out;
}

std::pair<double, double> point_of(const std::string& address) {
  const Point p = address_point(Address::parse(address));
  return {p.x.to_double(), p.y.to_double()};
}

std::string tops_of(const std::string& word, int corner) {
  return tops_address(Word::parse(word), static_cast<Symbol>(corner)).to_string();
}

py::dict report_dict(const VariationReport& r) {
  py::dict d;
  d["definition"] = to_string(r.definition);
  d["levels"] = r.levels;
  d["partial_sums"] = r.partial_sums;
  d["verdict"] = to_string(r.verdict);
  d["variation"] = r.variation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Functions on the Sierpinski gasket";

  static py::exception<Error> error(m, "GasketError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.attr("DIM") = kGasketDim;

  // Addresses travel as their text form, e.g. "2(1)".
  m.def("canonical_address", [](const std::string& a) { return Address::parse(a).to_string(); });
  m.def("compare_addresses", &compare, "-1, 0 or 1");
  m.def("address_point", &point_of, "Coordinates of the point an address encodes");
  m.def("tops_address", &tops_of, py::arg("word"), py::arg("corner"));
  m.def("canonical_partition", &partition_text, py::arg("n"));
  m.def("vertex_count", &vertex_count, py::arg("n"));
  m.def("edge_count", [](int n) { return edges(n).size(); }, py::arg("n"));

  py::class_<GasketFunction>(m, "Function")
      .def_static("constant", &GasketFunction::constant, py::arg("c"))
      .def_static("coordinate", &GasketFunction::coordinate)
      .def_static("osc", &GasketFunction::osc)
      .def_static("cell_indicator", [](const std::string& w) { return GasketFunction::cell_indicator(Word::parse(w)); },
                  py::arg("word"))
      .def_static("harmonic", &GasketFunction::harmonic, py::arg("boundary"))
      .def_static("biharmonic",
                  [](std::array<double, 3> f0, std::array<double, 3> lap0) {
                    return GasketFunction::biharmonic(BiharmonicSeed{f0, lap0});
                  },
                  py::arg("f0"), py::arg("lap0"))
      .def("__call__", [](const GasketFunction& f, const std::string& a) { return f.at(Address::parse(a)); })
      .def("describe", &GasketFunction::describe)
      .def("__repr__", [](const GasketFunction& f) { return "<gasket.Function " + f.describe() + ">"; })
      .def(py::self + py::self)
      .def(py::self * py::self)
      .def(py::self - py::self)
      .def(float() * py::self)
      .def(float() + py::self)
      .def("__rmul__", [](const GasketFunction& f, double c) { return c * f; })
      .def("__radd__", [](const GasketFunction& f, double c) { return c + f; });

  m.def("harmonic_extend", &harmonic_extend, py::arg("boundary"), py::arg("depth"));
  m.def("biharmonic_extend",
        [](std::array<double, 3> f0, std::array<double, 3> lap0, int depth) {
          return biharmonic_extend(BiharmonicSeed{f0, lap0}, depth);
        },
        py::arg("f0"), py::arg("lap0"), py::arg("depth"));
  m.def("graph_energy", &graph_energy, py::arg("f"), py::arg("m"));
  m.def("energy_trace",
        [](const GasketFunction& f, int m_max) {
          const EnergyTrace t = energy_trace(f, m_max);
          return py::make_tuple(t.values, to_string(t.verdict), t.energy);
        },
        py::arg("f"), py::arg("m_max"));
  m.def("fukushima_check",
        [](const GasketFunction& f, int m) {
          const FukushimaResult r = fukushima_check(f, m);
          py::dict d;
          d["max_ratio"] = r.max_ratio;
          d["bound"] = r.bound;
          d["sigma"] = r.sigma;
          d["holds"] = r.holds;
          return d;
        },
        py::arg("f"), py::arg("m"));

  m.def("cell_oscillation",
        [](const GasketFunction& f, const std::string& w, int k) { return cell_oscillation(f, Word::parse(w), k); },
        py::arg("f"), py::arg("word"), py::arg("k") = kDefaultRefine);
  m.def("total_oscillation", &total_oscillation, py::arg("f"), py::arg("n"), py::arg("k") = kDefaultRefine);
  m.def("variation",
        [](const GasketFunction& f, const std::string& def, int n_max, int k) {
          return report_dict(variation_report(f, parse_definition(def), n_max, k));
        },
        py::arg("f"), py::arg("definition"), py::arg("n_max"), py::arg("k") = kDefaultRefine);
  m.def("holder_class_norm", &holder_class_norm, py::arg("f"), py::arg("alpha"), py::arg("n_max"),
        py::arg("k") = kDefaultRefine);
  m.def("classify_alpha",
        [](const GasketFunction& f, int n_min, int n_max, int k) {
          const AlphaClassification c = classify_alpha(f, n_min, n_max, k);
          py::dict d;
          d["slope"] = c.slope;
          d["gamma"] = c.gamma;
          d["dim_prediction"] = c.dim_prediction;
          d["constant_like"] = c.constant_like;
          return d;
        },
        py::arg("f"), py::arg("n_min"), py::arg("n_max"), py::arg("k") = kDefaultRefine);
  m.def("saltus_count",
        [](const GasketFunction& f, double eps, int n, int k) { return saltus_cell_fraction(f, eps, n, k).count; },
        py::arg("f"), py::arg("epsilon"), py::arg("n"), py::arg("k") = kDefaultRefine);
  m.def("graph_cover_sum",
        [](const GasketFunction& f, int n, int k) { return graph_cover_sum(f, n, k).value; },
        py::arg("f"), py::arg("n"), py::arg("k") = kDefaultRefine);

  m.def("box_dimension_estimate",
        [](const GasketFunction& f, int n_min, int n_max, int k) {
          const DimensionEstimate e = box_dimension_estimate(f, n_min, n_max, k);
          return py::make_tuple(e.lower, e.upper, e.degenerate);
        },
        py::arg("f"), py::arg("n_min"), py::arg("n_max"), py::arg("k") = kDefaultRefine);
  m.def("holder_dim_bound", &holder_dim_bound, py::arg("s"));
  m.def("theoretical_ceiling",
        [](const std::string& kind, std::optional<double> s) {
          return theoretical_ceiling(parse_ceiling_kind(kind), s).value;
        },
        py::arg("kind"), py::arg("s") = py::none());
}
