#include "cli.hpp"

#include "dfinum/error.hpp"
#include "dfinum/evaluator.hpp"
#include "dfinum/gallery.hpp"
#include "dfinum/limits.hpp"
#include "dfinum/text.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace dfinum::cli {

namespace {

struct Common {
    long prec = 30;
    std::size_t budget = 0;
    std::string format = "decimal";
};

void add_common(CLI::App* sc, Common& c) {
    sc->add_option("--prec", c.prec, "significant decimal digits (1..300)")->check(CLI::Range(1L, 300L));
    sc->add_option("--budget", c.budget, "term budget (0 = command default)");
    sc->add_option("--format", c.format, "exact | decimal | both")
        ->check(CLI::IsMember({"exact", "decimal", "both"}));
}

/// Contents of the file when `arg` names one (lines starting with '#' dropped), else `arg`.
std::string input_text(const std::string& arg) {
    std::error_code ec;
    if (arg.size() < 4096 && std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        if (!in) fail(ErrorKind::parse, "cannot read '" + arg + "'");
        std::string line, text;
        while (std::getline(in, line)) {
            const auto first = line.find_first_not_of(" \t");
            if (first != std::string::npos && line[first] == '#') continue;
            text += line + "\n";
        }
        return text;
    }
    return arg;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::parse:
        case ErrorKind::precondition: return parse_error;
        case ErrorKind::singular_point: return singular;
        case ErrorKind::no_path: return path_error;
        case ErrorKind::budget:
        case ErrorKind::separation: return budget_error;
        case ErrorKind::no_convergence:
        case ErrorKind::ambiguous_root: return limit_error;
    }
    return parse_error;
}

class Report {
public:
    explicit Report(std::ostream& out) : out_(out) {}
    void line(const std::string& key, const std::string& value) { out_ << key << " = " << value << "\n"; }

    /// value / exact lines according to the format flag.
    void value(const std::string& key, const Enclosure& v, const std::optional<GaussianRational>& exact,
               const Common& c) {
        const bool want_exact = c.format != "decimal";
        const bool want_decimal = c.format != "exact" || !exact;
        if (want_decimal) line(key, format_enclosure(v, c.prec));
        if (want_exact) line(key == "value" ? "exact" : key + "_exact", exact ? exact->str() : "unavailable");
    }

private:
    std::ostream& out_;
};

double tolerance(long digits, const std::optional<double>& tol) {
    if (tol) return *tol;
    return std::pow(10.0, -static_cast<double>(digits));
}

std::string join(const std::vector<GaussianRational>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
    return s;
}

std::string format_double(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

// --- commands -----------------------------------------------------------------

struct EvalArgs {
    std::string instance, at, path, hint = "upper";
    long deriv = 0;
};

void cmd_eval(const EvalArgs& a, const Common& c, Report& rep) {
    const mpfr_prec_t bits = bits_for_digits(c.prec);
    const DFiniteInstance inst = parse_instance(input_text(a.instance), bits);
    const GaussianRational at = parse_gaussian(a.at);
    EvalOptions opt;
    opt.prec = bits;
    if (c.budget) opt.budget = c.budget;
    opt.hint = a.hint == "lower" ? PathHint::lower : PathHint::upper;
    std::optional<EvalPath> path;
    if (!a.path.empty()) {
        EvalPath p{parse_point_list(input_text(a.path))};
        if (p.waypoints.empty() || p.waypoints.front() != inst.base()) p.waypoints.insert(p.waypoints.begin(), inst.base());
        if (p.waypoints.back() != at) p.waypoints.push_back(at);
        path = p;
    }
    const EvalResult r = evaluate(inst, at, a.deriv, opt, path);
    std::size_t terms = 0;
    for (const auto& s : r.segments) terms += s.terms;
    rep.line("command", "eval");
    rep.line("instance", format_instance(inst, c.prec));
    rep.line("point", at.str());
    rep.line("derivative", std::to_string(a.deriv));
    rep.value("value", r.value, r.exact, c);
    rep.line("path", "[" + join(r.path.waypoints) + "]");
    rep.line("segments", std::to_string(r.segments.size()));
    rep.line("terms", std::to_string(terms));
    rep.line("rigor", r.rigor);
}

struct RootseqArgs {
    std::string poly, var = "y", eta;
    std::size_t terms = 6;
    std::optional<double> tol;
};

void cmd_rootseq(const RootseqArgs& a, const Common& c, Report& rep) {
    const GPoly p = parse_polynomial(input_text(a.poly), a.var);
    const GaussianRational eta = parse_gaussian(a.eta);
    const mpfr_prec_t bits = bits_for_digits(c.prec);
    rep.line("command", "rootseq");
    rep.line("polynomial", format_polynomial(p, a.var));
    rep.line("eta", eta.str());
    rep.line("lemma_polynomial", format_bivariate(build_lemma_polynomial(p, eta), "z", a.var));
    const ConvergentRecurrence seq = root_sequence(p, eta);
    rep.line("recurrence", format_operator(seq.op));
    const std::size_t shown = std::max(a.terms, seq.initial.values.size());
    const auto terms = unroll_exact(seq.op, seq.initial.exact_values(), shown, seq.initial.offset);
    rep.line("terms", join(std::vector<GaussianRational>(terms.begin(), terms.begin() + static_cast<long>(a.terms))));
    const RootSequenceLimit r = root_sequence_limit(p, eta, tolerance(c.prec, a.tol), c.budget ? c.budget : 100000, bits);
    rep.value("limit", r.limit.value, r.limit.exact, c);
    rep.line("root", format_enclosure(r.root.disk, c.prec));
    rep.line("root_multiplicity", std::to_string(r.root.multiplicity));
    rep.line("iterations", std::to_string(r.limit.terms));
    rep.line("ratio", format_double(r.limit.ratio));
    rep.line("tolerance_met", r.limit.tolerance_met ? "true" : "false");
    rep.line("rigor", r.limit.rigor);
}

struct ClosureArgs {
    std::string operation;
    std::vector<std::string> operands;
    std::string zeta;
};

void cmd_closure(const ClosureArgs& a, const Common&, Report& rep) {
    const std::string& op = a.operation;
    const bool binary = op == "add" || op == "mul" || op == "lclm";
    const std::size_t need = binary ? 2 : 1;
    if (a.operands.size() != need)
        fail(ErrorKind::parse, "closure " + op + " takes " + std::to_string(need) + " operator(s)");
    std::vector<ParsedOperator> ops;
    for (const auto& s : a.operands) ops.push_back(parse_operator(input_text(s)));
    if (binary && ops[0].is_diff() != ops[1].is_diff())
        fail(ErrorKind::parse, "closure " + op + ": operands live in different algebras");
    rep.line("command", "closure");
    rep.line("operation", op);
    const ParsedOperator& x = ops[0];
    auto emit = [&](const auto& result, const std::string& var) { rep.line("result", format_operator(normalize(result), var)); };
    if (binary) {
        const ParsedOperator& y = ops[1];
        if (x.is_diff()) {
            if (op == "add") emit(annihilator_sum(x.diff(), y.diff()), x.var);
            if (op == "mul") emit(annihilator_product(x.diff(), y.diff()), x.var);
            if (op == "lclm") emit(lclm(x.diff(), y.diff()), x.var);
        } else {
            if (op == "add") emit(annihilator_sum(x.shift(), y.shift()), x.var);
            if (op == "mul") emit(annihilator_product(x.shift(), y.shift()), x.var);
            if (op == "lclm") emit(lclm(x.shift(), y.shift()), x.var);
        }
    } else if (op == "sum") {
        emit(partial_sum_annihilator(x.shift()), x.var);
    } else if (op == "twist") {
        if (a.zeta.empty()) fail(ErrorKind::parse, "closure twist needs --zeta");
        emit(geometric_twist(x.shift(), parse_gaussian(a.zeta)), x.var);
    } else if (op == "realify") {
        if (x.is_diff())
            emit(realify(x.diff()), x.var);
        else
            emit(realify(x.shift()), x.var);
    } else if (op == "ode2rec") {
        emit(diffop_to_rec(x.diff()), "n");
    } else if (op == "rec2ode") {
        const RecToDiffResult r = rec_to_diffop(x.shift());
        emit(r.op, "z");
        rep.line("residual_degree_bound", std::to_string(r.residual_degree_bound));
        rep.line("annihilator", format_operator(homogenize(r.op, r.residual_degree_bound), "z"));
    }
}

struct LimitArgs {
    std::string rec, init;
    std::size_t offset = 0;
    std::optional<double> tol;
};

void cmd_limit(const LimitArgs& a, const Common& c, Report& rep) {
    const ShiftOperator rec = parse_shiftop(input_text(a.rec));
    const mpfr_prec_t bits = bits_for_digits(c.prec);
    ConvergentRecurrence seq{rec, {a.offset, {}}, std::nullopt};
    for (const auto& item : split_list(input_text(a.init))) seq.initial.values.push_back(parse_number_value(item, bits));
    const LimitResult r = limit_of_recurrence(seq, tolerance(c.prec, a.tol), c.budget ? c.budget : 10000, bits);
    rep.line("command", "limit");
    rep.line("recurrence", format_operator(rec));
    rep.value("value", r.value, r.exact, c);
    rep.line("terms", std::to_string(r.terms));
    rep.line("ratio", format_double(r.ratio));
    rep.line("tolerance_met", r.tolerance_met ? "true" : "false");
    rep.line("rigor", r.rigor);
    if (a.offset == 0) {
        const FunctionLimit f = to_function_limit(seq);
        rep.line("function_operator", format_operator(f.op));
        rep.line("function_note", f.note);
    }
}

void cmd_singularities(const std::string& op_text, const Common& c, Report& rep) {
    const DiffOperator op = parse_diffop(input_text(op_text));
    const auto roots = singularities(op, bits_for_digits(c.prec));
    rep.line("command", "singularities");
    rep.line("operator", format_operator(op));
    rep.line("count", std::to_string(roots.size()));
    for (std::size_t k = 0; k < roots.size(); ++k) {
        rep.line("singularity." + std::to_string(k + 1), format_enclosure(roots[k].disk, c.prec));
        rep.line("multiplicity." + std::to_string(k + 1), std::to_string(roots[k].multiplicity));
    }
}

void cmd_gallery(const std::string& name, const Common& c, Report& rep) {
    const GalleryResult g = run_gallery(name, c.prec, c.budget);
    rep.line("command", "gallery");
    rep.line("constant", g.name);
    rep.line("pipeline", g.pipeline);
    rep.value("value", g.value, g.exact, c);
    for (const auto& [k, v] : g.details) rep.line(k, v);
    rep.line("terms", std::to_string(g.terms));
    rep.line("rigor", g.rigor);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact arithmetic for D-finite functions and P-recursive sequences", "dfinum"};
    app.require_subcommand(1);
    Common common;

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "evaluate an instance (or a derivative) at a point");
    eval->add_option("instance", ea.instance, "instance file or literal")->required();
    eval->add_option("--at", ea.at, "evaluation point (Gaussian rational)")->required();
    eval->add_option("--deriv", ea.deriv, "derivative order")->check(CLI::NonNegativeNumber);
    eval->add_option("--path", ea.path, "waypoint list, e.g. [0, -1+i, -2]");
    eval->add_option("--hint", ea.hint, "detour side for automatic paths")->check(CLI::IsMember({"upper", "lower"}));
    add_common(eval, common);

    RootseqArgs ra;
    auto* rootseq = app.add_subcommand("rootseq", "convergent sequence for a polynomial root");
    rootseq->add_option("--poly", ra.poly, "polynomial in the variable (file or literal)")->required();
    rootseq->add_option("--var", ra.var, "variable name of the polynomial");
    rootseq->add_option("--eta", ra.eta, "starting value")->required();
    rootseq->add_option("--terms", ra.terms, "number of exact terms to print");
    rootseq->add_option("--tol", ra.tol, "limit tolerance (default 10^-prec)");
    add_common(rootseq, common);

    ClosureArgs ca;
    auto* closure = app.add_subcommand("closure", "closure operations on operators");
    closure->add_option("operation", ca.operation, "add mul sum twist lclm realify ode2rec rec2ode")
        ->required()
        ->check(CLI::IsMember({"add", "mul", "sum", "twist", "lclm", "realify", "ode2rec", "rec2ode"}));
    closure->add_option("operands", ca.operands, "operator files or literals")->required();
    closure->add_option("--zeta", ca.zeta, "twist factor");
    add_common(closure, common);

    LimitArgs la;
    auto* limit = app.add_subcommand("limit", "limit of a P-recursive sequence");
    limit->add_option("recurrence", la.rec, "recurrence file or literal")->required();
    limit->add_option("--init", la.init, "initial terms, e.g. [0, 1]")->required();
    limit->add_option("--offset", la.offset, "index of the first initial term");
    limit->add_option("--tol", la.tol, "tolerance (default 10^-prec)");
    add_common(limit, common);

    std::string sing_op;
    auto* sing = app.add_subcommand("singularities", "certified enclosures of the singular points");
    sing->add_option("operator", sing_op, "differential operator file or literal")->required();
    add_common(sing, common);

    std::string gallery_name;
    auto* gallery = app.add_subcommand("gallery", "pre-wired constant pipelines");
    gallery->add_option("name", gallery_name, "e log2 pi4 zeta3 epi sqrt2")->required();
    add_common(gallery, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << "error = " << e.what() << "\n";
        err << "usage = " << sub->get_display_name() << " --help\n";
        return parse_error;
    }

    std::ostringstream buffer;
    Report rep(buffer);
    try {
        if (eval->parsed()) cmd_eval(ea, common, rep);
        if (rootseq->parsed()) cmd_rootseq(ra, common, rep);
        if (closure->parsed()) cmd_closure(ca, common, rep);
        if (limit->parsed()) cmd_limit(la, common, rep);
        if (sing->parsed()) cmd_singularities(sing_op, common, rep);
        if (gallery->parsed()) cmd_gallery(gallery_name, common, rep);
    } catch (const Error& e) {
        err << "error = " << e.what() << "\n";
        err << "error_kind = " << error_kind_name(e.kind()) << "\n";
        return exit_code(e.kind());
    }
    out << buffer.str();
    return ok;
}

}  // namespace dfinum::cli
