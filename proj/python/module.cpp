#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bipersist/barcode.hpp"
#include "bipersist/complex.hpp"
#include "bipersist/distance.hpp"
#include "bipersist/interlevel.hpp"
#include "bipersist/invariants.hpp"
#include "bipersist/render.hpp"

namespace py = pybind11;
using namespace bipersist;

namespace {

py::dict report_to_dict(const InvariantReport& r) {
    py::dict d;
    py::list spectral;
    for (double c : r.spectral_set) spectral.append(c);
    d["spectral_set"] = spectral;
    d["boundary_depth"] = r.boundary_depth;
    d["non_cycle_depth"] = r.non_cycle_depth;
    d["spread_global"] = r.spread_global;
    py::dict per_gen;
    for (const auto& [name, s] : r.spread_per_generator) per_gen[py::str(name)] = s;
    d["spread_per_generator"] = per_gen;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "rectangle barcodes of interlevel-filtered chain complexes over GF(2)";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SemanticError>(m, "SemanticError", PyExc_ValueError);
    py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);

    py::class_<FilteredComplex>(m, "FilteredComplex")
        .def(py::init<>())
        .def("degrees", &FilteredComplex::degrees)
        .def("total_generators", &FilteredComplex::total_generators)
        .def("__eq__", [](const FilteredComplex& a, const FilteredComplex& b) { return a == b; })
        .def("dumps", [](const FilteredComplex& c) { return serialize(c); });

    py::class_<Bar>(m, "Bar")
        .def_readonly("degree", &Bar::degree)
        .def_readonly("birth", &Bar::birth)
        .def_readonly("death", &Bar::death)
        .def_readonly("birth_generator", &Bar::birth_generator)
        .def_readonly("death_generator", &Bar::death_generator)
        .def("__repr__", [](const Bar& b) {
            return "Bar(deg=" + std::to_string(b.degree) + ", [" + std::to_string(b.birth) + ", " +
                   std::to_string(b.death) + "))";
        });

    py::class_<Rectangle>(m, "Rectangle")
        .def(py::init<int, double, double, double, std::string>(), py::arg("degree"),
             py::arg("c"), py::arg("ell1"), py::arg("ell2"), py::arg("generator") = "")
        .def_readonly("degree", &Rectangle::degree)
        .def_readonly("c", &Rectangle::c)
        .def_property_readonly("ell1", &Rectangle::ell1)
        .def_property_readonly("ell2", &Rectangle::ell2)
        .def_readonly("generator", &Rectangle::generator)
        .def_property_readonly("type",
                               [](const Rectangle& r) { return std::string(1, to_char(r.type)); })
        .def("contains", &Rectangle::contains)
        .def("__repr__", &rectangle_to_text);

    m.def("loads", &parse, "parse a complex from its canonical document");
    m.def("dumps", &serialize);
    m.def("fixture_torus", &fixture_torus);
    m.def("fixture_heart_circle", &fixture_heart_circle);
    m.def("fixture_h_sphere", &fixture_h_sphere);
    m.def("random_complex", &random_complex, py::arg("seed"), py::arg("max_degrees") = 4,
          py::arg("max_per_degree") = 3);
    m.def("scale", &scale);
    m.def("perturb", [](const FilteredComplex& c, const std::map<std::string, double>& shifts) {
        auto r = perturb(c, shifts);
        if (!r.ok())
            throw std::invalid_argument("perturb rejected: monotonicity violated by (" +
                                        r.witness->first + ", " + r.witness->second + ")");
        return *r.complex;
    });
    m.def("validate", [](const FilteredComplex& c) {
        std::vector<std::string> out;
        for (const auto& v : validate(c).violations) out.push_back(v.message);
        return out;
    });

    m.def("critical_values", &critical_values);
    m.def("interlevel_dimension", [](const FilteredComplex& c, int k, double a, double b) {
        return interlevel_dimension(c, k, {a, b});
    });
    m.def("structure_map_rank",
          [](const FilteredComplex& c, int k, double a1, double b1, double a2, double b2) {
              return structure_map_rank(c, k, {a1, b1}, {a2, b2});
          });

    m.def("sublevel_barcode", &sublevel_barcode);
    m.def("rectangle_barcode",
          [](const FilteredComplex& c) { return rectangle_barcode(c).rectangles; });
    m.def("verify", [](const FilteredComplex& c) {
        auto report = verify_decomposition(c, derive_rectangle_barcode(sublevel_barcode(c)));
        return py::make_tuple(report.ok, report.describe());
    });

    m.def("invariant_report", [](const FilteredComplex& c) {
        return report_to_dict(invariant_report(rectangle_barcode(c)));
    });
    m.def("spread_bruteforce", &spread_bruteforce);

    m.def("bottleneck_distance", [](const FilteredComplex& a, const FilteredComplex& b) {
        return bottleneck_distance(rectangle_barcode(a), rectangle_barcode(b));
    });
    m.def("bottleneck_distance_rectangles",
          [](const std::vector<Rectangle>& a, const std::vector<Rectangle>& b) {
              return bottleneck_distance(RectangleBarcode{a}, RectangleBarcode{b});
          });
    m.def("are_delta_interleaved",
          py::overload_cast<const Rectangle&, const Rectangle&, double>(&are_delta_interleaved));
    m.def("stability_experiment",
          [](const FilteredComplex& c, int trials, double magnitude, std::uint64_t seed,
             bool constant_shifts) {
              auto report = stability_experiment(c, trials, magnitude, seed, constant_shifts);
              py::list out;
              for (const auto& t : report.trials) {
                  py::dict d;
                  d["trial"] = t.trial;
                  d["delta"] = t.delta;
                  d["d_bot"] = t.d_bot;
                  d["bound_3delta_ok"] = t.bound_3delta_ok;
                  out.append(d);
              }
              return out;
          },
          py::arg("complex"), py::arg("trials") = 20, py::arg("magnitude") = 0.2,
          py::arg("seed") = 1, py::arg("constant_shifts") = false);

    m.def("render_svg", [](const FilteredComplex& c) {
        return render_svg(rectangle_barcode(c), c);
    });
    m.def("render_ascii", [](const FilteredComplex& c) {
        return render_ascii(rectangle_barcode(c), c);
    });
}
