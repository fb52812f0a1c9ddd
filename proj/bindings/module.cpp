#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psl2genus/brute_oracle.hpp"
#include "psl2genus/psl2_model.hpp"
#include "psl2genus/scaling_fit.hpp"
#include "psl2genus/semigroup_engine.hpp"

namespace py = pybind11;
using namespace psl2genus;

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Exact genus spectra, stable upper genus and scaling fits for "
        "PSL2(F_p), p = 3 (mod 4)";
#ifdef PSL2GENUS_VERSION
    m.attr("__version__") = PSL2GENUS_VERSION;
#else
    m.attr("__version__") = "dev";
#endif

    py::register_exception<Error>(m, "Error");

    py::enum_<PeriodModel>(m, "PeriodModel")
        .value("ALL_DIVISORS", PeriodModel::all_divisors)
        .value("LEMMA3", PeriodModel::lemma3);

    py::class_<Signature>(m, "Signature")
        .def(py::init([](int64_t h, const std::map<int64_t, int64_t>& counts) {
                 return Signature{h, counts};
             }),
             py::arg("h") = 0,
             py::arg("counts") = std::map<int64_t, int64_t>{})
        .def_readwrite("h", &Signature::h)
        .def_readwrite("counts", &Signature::counts)
        .def("branch_points", &Signature::branch_points)
        .def("wire", &Signature::wire)
        .def("human", &Signature::human)
        .def_static("from_wire", &Signature::from_wire, py::arg("text"))
        .def("__eq__", [](const Signature& a, const Signature& b) { return a == b; })
        .def("__repr__", [](const Signature& sig) {
            return "Signature('" + sig.wire() + "')";
        });

    py::class_<GroupInstance>(m, "GroupInstance")
        .def_readonly("p", &GroupInstance::p)
        .def_readonly("order", &GroupInstance::order)
        .def_readonly("periods", &GroupInstance::periods)
        .def_readonly("coefficients", &GroupInstance::coefficients)
        .def_readonly("mu", &GroupInstance::mu)
        .def_readonly("exceptions", &GroupInstance::exceptions)
        .def_readonly("period_model", &GroupInstance::period_model)
        .def("__repr__", [](const GroupInstance& inst) {
            return "GroupInstance(p=" + std::to_string(inst.p) +
                   ", order=" + std::to_string(inst.order) + ")";
        });

    m.def("is_prime", &is_prime, py::arg("n"));
    m.def("group_order", &group_order, py::arg("p"));
    m.def("d_value", &d_value, py::arg("p"));
    m.def("periods_for", &periods_for, py::arg("p"),
          py::arg("model") = PeriodModel::all_divisors);
    m.def("coefficient", &coefficient, py::arg("instance"), py::arg("m"));
    m.def("rh_genus", &rh_genus, py::arg("instance"), py::arg("signature"));
    m.def("is_admissible", &is_admissible, py::arg("instance"),
          py::arg("signature"));
    m.def(
        "load_instance",
        [](int64_t p, std::optional<std::vector<int64_t>> periods,
           std::optional<int64_t> mu,
           std::optional<std::vector<Signature>> exceptions,
           std::optional<PeriodModel> period_model) {
            InstanceOverrides overrides{std::move(periods), mu,
                                        std::move(exceptions), period_model};
            return load_instance(p, overrides);
        },
        py::arg("p"), py::arg("periods") = std::nullopt,
        py::arg("mu") = std::nullopt, py::arg("exceptions") = std::nullopt,
        py::arg("period_model") = std::nullopt);

    py::class_<AperyTable>(m, "AperyTable")
        .def_readonly("generators", &AperyTable::generators)
        .def_readonly("modulus", &AperyTable::modulus)
        .def_readonly("least_member", &AperyTable::least_member)
        .def_readonly("back_pointer", &AperyTable::back_pointer);

    m.def("apery_set", &apery_set, py::arg("generators"),
          py::arg("table_cap") = kDefaultTableCap);
    m.def("frobenius_number",
          py::overload_cast<std::vector<int64_t>>(&frobenius_number),
          py::arg("generators"));
    m.def("is_member", &is_member, py::arg("table"), py::arg("m"));
    m.def("decompose", &decompose, py::arg("table"), py::arg("m"));

    py::class_<StableResult>(m, "StableResult")
        .def_readonly("sigma", &StableResult::sigma)
        .def_readonly("frobenius", &StableResult::frobenius)
        .def_readonly("run_length", &StableResult::run_length)
        .def_readonly("gap_at_prev", &StableResult::gap_at_prev)
        .def_readonly("clamped_to_mu", &StableResult::clamped_to_mu)
        .def("__repr__", [](const StableResult& result) {
            return "StableResult(sigma=" + std::to_string(result.sigma) + ")";
        });

    py::class_<WindowEntry>(m, "WindowEntry")
        .def_readonly("genus", &WindowEntry::genus)
        .def_readonly("witness", &WindowEntry::witness);

    py::class_<SpectrumWindow>(m, "SpectrumWindow")
        .def_readonly("lo", &SpectrumWindow::lo)
        .def_readonly("hi", &SpectrumWindow::hi)
        .def_readonly("members", &SpectrumWindow::members)
        .def_readonly("gaps", &SpectrumWindow::gaps);

    py::class_<SpectrumEngine>(m, "SpectrumEngine")
        .def(py::init<GroupInstance, int64_t>(), py::arg("instance"),
             py::arg("table_cap") = kDefaultTableCap)
        .def_property_readonly("instance", &SpectrumEngine::instance)
        .def_property_readonly("table", &SpectrumEngine::table)
        .def("genus_member", &SpectrumEngine::genus_member, py::arg("g"))
        .def("witness", &SpectrumEngine::witness, py::arg("g"))
        .def("window", &SpectrumEngine::window, py::arg("lo"), py::arg("hi"),
             py::arg("cap") = kDefaultWindowCap)
        .def("min_genus", &SpectrumEngine::min_genus)
        .def("stable_upper_genus", &SpectrumEngine::stable_upper_genus);

    py::class_<Bounds>(m, "Bounds")
        .def_readonly("h_max", &Bounds::h_max)
        .def_readonly("a_max", &Bounds::a_max);

    m.def("derive_bounds", &derive_bounds, py::arg("instance"),
          py::arg("target_genus"));
    m.def("archival_bounds", &archival_bounds, py::arg("instance"),
          py::arg("listing"));
    m.def("enumerate_genera", &enumerate_genera, py::arg("instance"),
          py::arg("bounds"), py::arg("lo"), py::arg("hi"),
          py::arg("cap") = kDefaultGridCap);
    m.def("verify_absent", &verify_absent, py::arg("instance"), py::arg("g"),
          py::arg("cap") = kDefaultGridCap);

    py::class_<FitModel>(m, "FitModel")
        .def(py::init([](double a, double b, double c) {
                 return FitModel{a, b, c};
             }),
             py::arg("a"), py::arg("b"), py::arg("c"))
        .def_readwrite("a", &FitModel::a)
        .def_readwrite("b", &FitModel::b)
        .def_readwrite("c", &FitModel::c)
        .def("__repr__", [](const FitModel& model) {
            return "FitModel(a=" + std::to_string(model.a) +
                   ", b=" + std::to_string(model.b) +
                   ", c=" + std::to_string(model.c) + ")";
        });

    py::class_<DataPoint>(m, "DataPoint")
        .def(py::init([](int64_t p, int64_t g) { return DataPoint{p, g}; }),
             py::arg("p"), py::arg("g"))
        .def_readwrite("p", &DataPoint::p)
        .def_readwrite("g", &DataPoint::g);

    py::class_<PredictionRow>(m, "PredictionRow")
        .def_readonly("p", &PredictionRow::p)
        .def_readonly("observed", &PredictionRow::observed)
        .def_readonly("fitted", &PredictionRow::fitted)
        .def_readonly("fitted_rounded", &PredictionRow::fitted_rounded)
        .def_readonly("rel_residual", &PredictionRow::rel_residual);

    m.def("evaluate", &evaluate, py::arg("model"), py::arg("p"));
    m.def(
        "fit_loglinear",
        [](const std::vector<DataPoint>& points, std::optional<double> fix_b,
           std::optional<double> fix_c) {
            return fit_loglinear(points, {fix_b, fix_c});
        },
        py::arg("points"), py::arg("fix_b") = std::nullopt,
        py::arg("fix_c") = std::nullopt);
    m.def("residual_table", &residual_table, py::arg("model"),
          py::arg("points"),
          py::arg("predict_only") = std::vector<int64_t>{});
    m.def("reference_dataset", &reference_dataset,
          py::return_value_policy::copy);
    m.def("preset_model", &preset_model, py::arg("name"));
}
