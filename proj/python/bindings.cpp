#include "biharm/biharmonic.hpp"
#include "biharm/error.hpp"
#include "biharm/report.hpp"
#include "biharm/scene.hpp"
#include "biharm/verify.hpp"
#include "biharm/warped.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace biharm;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.
std::string dump(const report::json& j) { return j.dump(); }

ImmersionSpec immersion(std::vector<std::string> vars, const std::vector<std::string>& components,
                        expr::ParamBindings params, const std::string& model, int dim) {
    return make_immersion(std::move(vars), components, std::move(params),
                          AmbientChart(parse_space_form_model(model), dim));
}

WarpedScene warped_scene(const ImmersionSpec& spec, const std::string& warp, expr::ParamBindings params,
                         double t_lo, double t_hi) {
    WarpedScene s{spec, make_warp(warp, std::move(params)), t_lo, t_hi};
    s.validate();
    return s;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Biharmonic hypersurface and warped-product computations";

    static PyObject* error = PyErr_NewException("biharm._core.Error", PyExc_RuntimeError, nullptr);
    m.add_object("Error", py::handle(error));
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
            exc.attr("kind") = to_string(e.kind());
            PyErr_SetObject(error, exc.ptr());
        }
    });

    py::class_<ImmersionSpec>(m, "Immersion")
        .def(py::init(&immersion), py::arg("vars"), py::arg("components"), py::arg("params") = expr::ParamBindings{},
             py::arg("model") = "euclidean", py::arg("dim") = 3)
        .def_property_readonly("m", &ImmersionSpec::m)
        .def_property_readonly("n", &ImmersionSpec::n)
        .def_property_readonly("is_hypersurface", &ImmersionSpec::is_hypersurface)
        .def_readonly("vars", &ImmersionSpec::vars)
        .def_readonly("params", &ImmersionSpec::params)
        .def_property_readonly("model", [](const ImmersionSpec& s) { return to_string(s.ambient.model()); })
        .def("with_param", &ImmersionSpec::with_param, py::arg("name"), py::arg("value"));

    py::class_<WarpedScene>(m, "WarpedScene")
        .def(py::init(&warped_scene), py::arg("immersion"), py::arg("warp"),
             py::arg("params") = expr::ParamBindings{}, py::arg("t_lo") = 0.0, py::arg("t_hi") = 1.0)
        .def_readonly("immersion", &WarpedScene::immersion)
        .def_readonly("t_lo", &WarpedScene::t_lo)
        .def_readonly("t_hi", &WarpedScene::t_hi);

    py::class_<Scene>(m, "Scene")
        .def_readonly("origin", &Scene::origin)
        .def_readonly("immersion", &Scene::immersion)
        .def_readonly("warped", &Scene::warped)
        .def_readonly("points", &Scene::points)
        .def_readonly("tolerance", &Scene::tolerance);

    m.def("load_scene", [](const std::filesystem::path& p) { return load_scene(p); }, py::arg("path"));
    m.def("parse_scene", [](const std::string& text, const std::string& origin) { return parse_scene(text, origin); },
          py::arg("text"), py::arg("origin") = "<scene>");

    m.def("sphere_slice", &builtin::sphere_slice, py::arg("r"), py::arg("m") = 2);
    m.def("cone", &builtin::cone, py::arg("r"), py::arg("doubled") = false);

    m.def("eval_expr", [](const std::string& src, const expr::ParamBindings& values) {
        return expr::eval_real(expr::parse(src), values);
    }, py::arg("source"), py::arg("values") = expr::ParamBindings{});

    m.def("_analyze", [](const ImmersionSpec& s, const std::vector<double>& p) {
        return dump(s.is_hypersurface() ? report::to_json(system_residuals(s, p)) : report::to_json(analyze_point(s, p)));
    });
    m.def("_classify", [](const ImmersionSpec& s, const PointList& pts, double tol) {
        return dump(report::to_json(classify(s, pts, tol)));
    });
    m.def("_scan", [](const ImmersionSpec& s, const std::string& param, double lo, double hi, int samples,
                      const std::vector<double>& probe) {
        return dump(report::to_json(parameter_scan(s, param, lo, hi, samples, probe)));
    });
    m.def("_warped_report", [](const WarpedScene& s, double t, const std::vector<double>& p) {
        return dump(report::to_json(warped_report(s, t, p)));
    });
    m.def("_verify", [](const std::string& filter) {
        report::json j = report::json::array();
        for (const auto& r : run_checks(filter)) {
            j.push_back({{"name", r.name}, {"expected", r.expected}, {"got", r.got}, {"tolerance", r.tolerance},
                         {"pass", r.pass}});
            if (!r.error.empty()) j.back()["error"] = r.error;
        }
        return dump(j);
    });
}
