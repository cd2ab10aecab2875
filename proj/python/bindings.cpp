#include "cli.hpp"
#include "dulac/banach.hpp"
#include "dulac/error.hpp"
#include "dulac/gamma.hpp"
#include "dulac/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;

namespace {

dulac::TPoly poly_of(const std::vector<std::string>& coeffs)
{
    std::vector<dulac::ExactScalar> c;
    for (const auto& s : coeffs)
        c.push_back(dulac::ExactScalar::parse(s));
    return dulac::TPoly(std::move(c));
}

void check_precision(unsigned bits)
{
    if (bits < 64 || bits > dulac::kMaxPrecision)
        dulac::fail(dulac::ErrorKind::Schema, "precision must lie in [64, 1024]");
}

} // namespace

PYBIND11_MODULE(_dulac, m)
{
    m.doc() = "Native core of the dulac package";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::object(py::reinterpret_steal<py::object>(
                    PyErr_NewException("dulac._dulac.DulacError", PyExc_RuntimeError, nullptr))); });
    m.attr("DulacError") = error_type.get_stored();
    // args are (kind, message)
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const dulac::Error& e) {
            py::tuple args = py::make_tuple(dulac::to_string(e.kind()), e.what());
            PyErr_SetObject(error_type.get_stored().ptr(), args.ptr());
        }
    });

    m.def(
        "run",
        [](const std::vector<std::string>& args, const std::string& stdin_text) {
            std::ostringstream out, err;
            std::istringstream in(stdin_text);
            int code;
            {
                py::gil_scoped_release release;
                code = dulac::cli::run(args, out, err, in);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "",
        "Runs the command line; returns (exit_code, stdout, stderr).");

    m.def(
        "gamma_abs",
        [](const std::string& z, unsigned precision) {
            check_precision(precision);
            dulac::ScopedPrecision prec(precision);
            return dulac::gamma_abs(dulac::ExactScalar::parse(z)).str(17);
        },
        py::arg("z"), py::arg("precision") = dulac::kDefaultPrecision,
        "|Gamma(z)| for an exact complex z with Re z > 0, as a decimal string.");

    m.def(
        "solve_coefficient",
        [](const std::vector<std::string>& l, const std::string& lambda, const std::vector<std::string>& b) {
            return dulac::solve_coefficient(poly_of(l), dulac::ExactScalar::parse(lambda), poly_of(b))
                .to_strings();
        },
        py::arg("L"), py::arg("lam"), py::arg("b"),
        "Polynomial v with L(lam + d/dt) v = b; coefficients lowest degree first.");

    m.def(
        "apply_operator",
        [](const std::vector<std::string>& l, const std::string& lambda, const std::vector<std::string>& v) {
            return dulac::apply_operator(poly_of(l), dulac::ExactScalar::parse(lambda), poly_of(v)).to_strings();
        },
        py::arg("L"), py::arg("lam"), py::arg("v"));

    m.def(
        "lemma6_constant",
        [](const std::string& beta, const std::string& s, unsigned precision) {
            check_precision(precision);
            dulac::ScopedPrecision prec(precision);
            return dulac::lemma6_constant(dulac::parse_rational(beta), dulac::parse_rational(s)).str(17);
        },
        py::arg("beta"), py::arg("s"), py::arg("precision") = dulac::kDefaultPrecision);
}
