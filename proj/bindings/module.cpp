#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "triq/verify.hpp"

namespace py = pybind11;
using namespace triq;

namespace {

Int to_int(const py::object& o) { return Int(py::str(o).cast<std::string>()); }

py::object from_int(const Int& n) {
    return py::module_::import("builtins").attr("int")(n.get_str());
}

}  // namespace

PYBIND11_MODULE(_triq, m) {
    m.doc() = "exact unit indices and 2-class numbers of Q(sqrt2, sqrt p1, sqrt p2)";

    py::register_exception<precondition_error>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<inconsistency_error>(m, "InconsistencyError", PyExc_RuntimeError);

    m.def(
        "analyze_json",
        [](const py::object& p1, const py::object& p2) {
            return analyze(to_int(p1), to_int(p2)).to_json();
        },
        py::arg("p1"), py::arg("p2"),
        "Full case report for a prime pair as a JSON string (schema 1).");

    m.def(
        "unit_index",
        [](const py::object& p1, const py::object& p2) {
            return from_int(analyze(to_int(p1), to_int(p2)).qK);
        },
        py::arg("p1"), py::arg("p2"), "q(K) for the pair.");

    m.def(
        "h2",
        [](const py::object& p1, const py::object& p2) {
            return from_int(analyze(to_int(p1), to_int(p2)).h2K);
        },
        py::arg("p1"), py::arg("p2"), "2-class number of K.");

    m.def(
        "verified_index",
        [](const py::object& p1, const py::object& p2) {
            Int a = to_int(p1), b = to_int(p2);
            CaseReport r = analyze(a, b);
            return from_int(verify_index(r.generators, a, b));
        },
        py::arg("p1"), py::arg("p2"),
        "Regulator-ratio index, certified independently of the dispatch.");

    m.def(
        "norm_signature",
        [](const py::object& p1, const py::object& p2) {
            NormSignature s = norm_signature(to_int(p1), to_int(p2));
            return py::make_tuple(s.n1, s.n2, s.n3, s.n4);
        },
        py::arg("p1"), py::arg("p2"), "(N(e_2p1), N(e_2p2), N(e_p1p2), N(e_2p1p2)).");

    m.def(
        "fundamental_unit",
        [](const py::object& d) {
            QuadUnit u = fundamental_unit(to_int(d));
            return py::make_tuple(from_int(u.a), from_int(u.b), u.denom, u.norm);
        },
        py::arg("d"), "(a, b, denom, norm) with e_d = (a + b*sqrt(d))/denom.");
}
