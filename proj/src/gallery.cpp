#include "dfinum/gallery.hpp"

#include "dfinum/error.hpp"
#include "dfinum/evaluator.hpp"
#include "dfinum/limits.hpp"
#include "dfinum/text.hpp"

#include <cmath>

namespace dfinum {

namespace {

std::string join_points(const std::vector<GaussianRational>& pts) {
    std::string s = "[";
    for (std::size_t k = 0; k < pts.size(); ++k) s += (k ? ", " : "") + pts[k].str();
    return s + "]";
}

GalleryResult from_eval(const std::string& name, const std::string& instance_text, const GaussianRational& at,
                        long digits, std::size_t budget, const std::optional<EvalPath>& path,
                        const std::string& note) {
    const mpfr_prec_t bits = bits_for_digits(digits);
    const DFiniteInstance inst = parse_instance(instance_text, bits);
    EvalOptions opt;
    opt.prec = bits;
    if (budget) opt.budget = budget;
    const EvalResult r = evaluate(inst, at, 0, opt, path);
    GalleryResult g;
    g.name = name;
    g.pipeline = note + "; " + instance_text + " evaluated at " + at.str();
    g.value = r.value;
    g.exact = r.exact;
    g.rigor = r.rigor;
    for (const auto& s : r.segments) g.terms += s.terms;
    g.details.emplace_back("path", join_points(r.path.waypoints));
    g.details.emplace_back("segments", std::to_string(r.segments.size()));
    return g;
}

/// 10^-digits clamped to the double range.
double tolerance_for(long digits) { return std::pow(10.0, -static_cast<double>(std::min(digits, 300L))); }

}  // namespace

const std::vector<std::string>& gallery_names() {
    static const std::vector<std::string> names{"e", "log2", "pi4", "zeta3", "epi", "sqrt2"};
    return names;
}

GalleryResult run_gallery(const std::string& name, long digits, std::size_t budget) {
    if (digits < 1) fail(ErrorKind::precondition, "precision must be at least one digit");
    if (name == "e")
        return from_eval(name, "instance { op: diff z: [-1; 1]; base: 0; ics: [1] }", GaussianRational(1), digits,
                         budget, std::nullopt, "exp(z) from D - 1");
    if (name == "log2")
        return from_eval(name, "instance { op: diff z: [0; 1; z + 1]; base: 0; ics: [0, 1] }", GaussianRational(1),
                         digits, budget, std::nullopt, "log(1 + z) from (1 + z) D^2 + D");
    if (name == "pi4")
        return from_eval(name, "instance { op: diff z: [0; 2*z; z^2 + 1]; base: 0; ics: [0, 1] }",
                         GaussianRational(1), digits, budget, std::nullopt,
                         "arctan(z) from (1 + z^2) D^2 + 2 z D");
    if (name == "epi") {
        const EvalPath upper{{GaussianRational(0), GaussianRational(-1, 1), GaussianRational(-2)}};
        GalleryResult g = from_eval(name, "instance { op: diff z: [i; z + 1]; base: 0; ics: [1] }",
                                    GaussianRational(-2), digits, budget, upper,
                                    "(1 + z)^(-i) from (1 + z) D + i continued through the upper half-plane");
        g.details.insert(g.details.begin(), {"branch", "upper half-plane waypoints " + join_points(upper.waypoints)});
        return g;
    }
    if (name == "zeta3") {
        const ShiftOperator li3 = parse_shiftop("shift n: [-n^4; n*(n+1)^3]");
        ConvergentRecurrence c{partial_sum_annihilator(li3), {0, {NumberValue(GaussianRational(0)),
                                                                  NumberValue(GaussianRational(1))}},
                               std::nullopt};
        const double tol = tolerance_for(digits + 1);
        const LimitResult r = limit_of_recurrence(c, tol, budget ? budget : 10000, bits_for_digits(digits));
        GalleryResult g;
        g.name = name;
        g.pipeline = "limit of the partial sums of 1/n^3; " + format_operator(c.op) + " with s_0 = 0, s_1 = 1";
        g.value = r.value;
        g.exact = r.exact;
        g.rigor = r.rigor;
        g.terms = r.terms;
        g.details.emplace_back("tolerance_met", r.tolerance_met ? "true" : "false");
        return g;
    }
    if (name == "sqrt2") {
        const GPoly p = parse_polynomial("y^2 - 2", "y");
        const GaussianRational eta(BigRational(3, 2));
        const RootSequenceLimit r =
            root_sequence_limit(p, eta, tolerance_for(digits + 1), budget ? budget : 100000, bits_for_digits(digits));
        GalleryResult g;
        g.name = name;
        g.pipeline = "limit of the root sequence of y^2 - 2 from eta = 3/2; " + format_operator(r.sequence.op);
        g.value = r.limit.value;
        g.exact = r.limit.exact;
        g.rigor = r.limit.rigor;
        g.terms = r.limit.terms;
        g.details.emplace_back("tolerance_met", r.limit.tolerance_met ? "true" : "false");
        g.details.emplace_back("certified_root", format_enclosure(r.root.disk, digits));
        return g;
    }
    std::string list;
    for (const auto& n : gallery_names()) list += (list.empty() ? "" : ", ") + n;
    fail(ErrorKind::parse, "unknown gallery constant '" + name + "'; available: " + list);
}

}  // namespace dfinum
