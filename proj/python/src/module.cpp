#include "cli.hpp"
#include "dfinum/error.hpp"
#include "dfinum/evaluator.hpp"
#include "dfinum/gallery.hpp"
#include "dfinum/limits.hpp"
#include "dfinum/text.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

namespace py = pybind11;
using namespace dfinum;

namespace {

double tolerance(long digits, const std::optional<double>& tol) {
    return tol ? *tol : std::pow(10.0, -static_cast<double>(digits));
}

/// {"value": "mid", "radius": "rad", "exact": str | None}
py::dict value_dict(const Enclosure& v, const std::optional<GaussianRational>& exact, long digits) {
    const DecimalText t = format_decimal(v, digits);
    py::dict d;
    d["value"] = t.mid;
    d["radius"] = t.rad;
    d["exact"] = exact ? py::object(py::str(exact->str())) : py::object(py::none());
    return d;
}

py::dict evaluate_py(const std::string& instance, const std::string& at, long deriv, long digits,
                     const std::optional<std::vector<std::string>>& path, const std::string& hint, std::size_t budget) {
    EvalOptions opt;
    opt.prec = bits_for_digits(digits);
    if (budget) opt.budget = budget;
    if (hint != "upper" && hint != "lower") fail(ErrorKind::parse, "hint must be 'upper' or 'lower'");
    opt.hint = hint == "upper" ? PathHint::upper : PathHint::lower;
    const DFiniteInstance inst = parse_instance(instance, opt.prec);
    const GaussianRational zeta = parse_gaussian(at);
    std::optional<EvalPath> route;
    if (path) {
        EvalPath p;
        for (const auto& w : *path) p.waypoints.push_back(parse_gaussian(w));
        if (p.waypoints.empty() || p.waypoints.front() != inst.base()) p.waypoints.insert(p.waypoints.begin(), inst.base());
        if (p.waypoints.back() != zeta) p.waypoints.push_back(zeta);
        route = p;
    }
    const EvalResult r = evaluate(inst, zeta, deriv, opt, route);
    py::dict d = value_dict(r.value, r.exact, digits);
    std::vector<std::string> waypoints;
    for (const auto& w : r.path.waypoints) waypoints.push_back(w.str());
    std::size_t terms = 0;
    for (const auto& s : r.segments) terms += s.terms;
    d["path"] = waypoints;
    d["segments"] = r.segments.size();
    d["terms"] = terms;
    d["rigor"] = r.rigor;
    return d;
}

py::dict root_sequence_py(const std::string& poly, const std::string& eta, std::size_t terms, const std::string& var) {
    const GPoly p = parse_polynomial(poly, var);
    const GaussianRational e = parse_gaussian(eta);
    const ConvergentRecurrence seq = root_sequence(p, e);
    const auto values = unroll_exact(seq.op, seq.initial.exact_values(), std::max(terms, seq.initial.values.size()),
                                     seq.initial.offset);
    std::vector<std::string> shown;
    for (std::size_t k = 0; k < terms; ++k) shown.push_back(values[k].str());
    py::dict d;
    d["lemma_polynomial"] = format_bivariate(build_lemma_polynomial(p, e), "z", var);
    d["recurrence"] = format_operator(seq.op);
    d["terms"] = shown;
    return d;
}

py::dict root_limit_py(const std::string& poly, const std::string& eta, long digits, const std::optional<double>& tol,
                       std::size_t budget, const std::string& var) {
    const RootSequenceLimit r = root_sequence_limit(parse_polynomial(poly, var), parse_gaussian(eta),
                                                    tolerance(digits, tol), budget, bits_for_digits(digits));
    py::dict d = value_dict(r.limit.value, r.limit.exact, digits);
    d["root"] = format_enclosure(r.root.disk, digits);
    d["root_multiplicity"] = r.root.multiplicity;
    d["iterations"] = r.limit.terms;
    d["tolerance_met"] = r.limit.tolerance_met;
    d["rigor"] = r.limit.rigor;
    return d;
}

py::dict limit_py(const std::string& rec, const std::vector<std::string>& init, std::size_t offset, long digits,
                  const std::optional<double>& tol, std::size_t budget) {
    const mpfr_prec_t bits = bits_for_digits(digits);
    ConvergentRecurrence seq{parse_shiftop(rec), {offset, {}}, std::nullopt};
    for (const auto& v : init) seq.initial.values.push_back(parse_number_value(v, bits));
    const LimitResult r = limit_of_recurrence(seq, tolerance(digits, tol), budget, bits);
    py::dict d = value_dict(r.value, r.exact, digits);
    d["terms"] = r.terms;
    d["ratio"] = r.ratio;
    d["tolerance_met"] = r.tolerance_met;
    d["rigor"] = r.rigor;
    return d;
}

std::string closure_py(const std::string& operation, const std::vector<std::string>& operands,
                       const std::optional<std::string>& zeta) {
    std::vector<std::string> args{"closure", operation};
    args.insert(args.end(), operands.begin(), operands.end());
    if (zeta) {
        args.emplace_back("--zeta");
        args.push_back(*zeta);
    }
    // Operands are literals; reuse the CLI dispatch and surface its error as DfinumError.
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    std::istringstream lines(code == 0 ? out.str() : err.str());
    std::string line, result, message, kind;
    while (std::getline(lines, line)) {
        if (line.rfind("result = ", 0) == 0) result = line.substr(9);
        if (line.rfind("error = ", 0) == 0) message = line.substr(8);
        if (line.rfind("error_kind = ", 0) == 0) kind = line.substr(13);
    }
    if (code != 0) {
        for (int k = 0; k <= static_cast<int>(ErrorKind::separation); ++k)
            if (kind == error_kind_name(static_cast<ErrorKind>(k))) fail(static_cast<ErrorKind>(k), message);
        fail(ErrorKind::parse, message);
    }
    return result;
}

std::vector<std::pair<std::string, int>> singularities_py(const std::string& op, long digits) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& r : singularities(parse_diffop(op), bits_for_digits(digits)))
        out.emplace_back(format_enclosure(r.disk, digits), r.multiplicity);
    return out;
}

py::dict gallery_py(const std::string& name, long digits, std::size_t budget) {
    const GalleryResult g = run_gallery(name, digits, budget);
    py::dict d = value_dict(g.value, g.exact, digits);
    d["name"] = g.name;
    d["pipeline"] = g.pipeline;
    d["terms"] = g.terms;
    d["rigor"] = g.rigor;
    py::dict details;
    for (const auto& [k, v] : g.details) details[py::str(k)] = v;
    d["details"] = details;
    return d;
}

py::tuple run_cli_py(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_dfinum, m) {
    m.doc() = "Exact arithmetic for D-finite functions and P-recursive sequences";

    static py::exception<Error> dfinum_error(m, "DfinumError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::handle(dfinum_error.ptr())(std::string(error_kind_name(e.kind())) + ": " + e.what());
            exc.attr("kind") = error_kind_name(e.kind());
            PyErr_SetObject(dfinum_error.ptr(), exc.ptr());
        }
    });

    m.def("format_operator", [](const std::string& text) { return format_operator(parse_operator(text)); },
          py::arg("text"), "Parses an operator literal and prints it canonically.");
    m.def("normalize_operator", [](const std::string& text) {
        const ParsedOperator p = parse_operator(text);
        return p.is_diff() ? format_operator(normalize(p.diff()), p.var) : format_operator(normalize(p.shift()), p.var);
    }, py::arg("text"));
    m.def("format_polynomial", [](const std::string& text, const std::string& var) {
        return format_polynomial(parse_polynomial(text, var), var);
    }, py::arg("text"), py::arg("var") = "z");
    m.def("evaluate", &evaluate_py, py::arg("instance"), py::arg("at"), py::arg("deriv") = 0, py::arg("digits") = 30,
          py::arg("path") = py::none(), py::arg("hint") = "upper", py::arg("budget") = 0,
          "f^(deriv)(at) for an instance literal, by analytic continuation.");
    m.def("root_sequence", &root_sequence_py, py::arg("poly"), py::arg("eta"), py::arg("terms") = 6,
          py::arg("var") = "y");
    m.def("root_limit", &root_limit_py, py::arg("poly"), py::arg("eta"), py::arg("digits") = 30,
          py::arg("tol") = py::none(), py::arg("budget") = 100000, py::arg("var") = "y");
    m.def("limit", &limit_py, py::arg("rec"), py::arg("init"), py::arg("offset") = 0, py::arg("digits") = 30,
          py::arg("tol") = py::none(), py::arg("budget") = 10000);
    m.def("closure", &closure_py, py::arg("operation"), py::arg("operands"), py::arg("zeta") = py::none(),
          "add, mul, lclm, sum, twist, realify, ode2rec or rec2ode; returns the normalized result.");
    m.def("singularities", &singularities_py, py::arg("op"), py::arg("digits") = 30);
    m.def("gallery_names", &gallery_names);
    m.def("gallery", &gallery_py, py::arg("name"), py::arg("digits") = 30, py::arg("budget") = 0);
    m.def("run_cli", &run_cli_py, py::arg("args"), "Runs a dfinum command; returns (exit_code, stdout, stderr).");
}
