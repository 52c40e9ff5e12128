#pragma once

#include "dfinum/ore.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dfinum {

/// One analytic solution of op: the solution with f^(k)(base) = ics[k] for k < order.
class DFiniteInstance {
public:
    /// Throws ErrorKind::singular_point when lc(op)(base) = 0 and ErrorKind::precondition
    /// when the number of initial conditions differs from the order.
    DFiniteInstance(DiffOperator op, GaussianRational base, std::vector<NumberValue> ics);

    const DiffOperator& op() const { return op_; }
    const GaussianRational& base() const { return base_; }
    const std::vector<NumberValue>& ics() const { return ics_; }
    bool exact() const;

private:
    DiffOperator op_;
    GaussianRational base_;
    std::vector<NumberValue> ics_;
};

struct EvalPath {
    std::vector<GaussianRational> waypoints;
};

/// Which side of a blocking singularity detours take.
enum class PathHint { upper, lower };

struct SegmentReport {
    GaussianRational from;
    GaussianRational to;
    /// Certified lower bound on the distance from `from` to the singularities.
    double singular_distance = 0.0;
    std::size_t terms = 0;
    /// Per-term decay ratio estimated from block maxima (0 when the series terminated).
    double ratio = 0.0;
};

struct EvalResult {
    Enclosure value;
    /// Set when the value is known exactly (terminating series with exact data, or zero steps).
    std::optional<GaussianRational> exact;
    EvalPath path;
    std::vector<SegmentReport> segments;
    /// "exact" when `exact` is set, "heuristic-tail" otherwise.
    std::string rigor = "heuristic-tail";
};

struct EvalOptions {
    /// Working precision of the midpoints in bits.
    mpfr_prec_t prec = 128;
    /// Maximal number of Taylor terms per step.
    std::size_t budget = 200000;
    /// Every step satisfies |step| <= safety * (distance to the singularities).
    double safety = 0.75;
    PathHint hint = PathHint::upper;
};

/// First n Taylor coefficients of the solution at its base point.
std::vector<NumberValue> local_taylor(const DFiniteInstance& inst, std::size_t n, mpfr_prec_t prec = 128);

/// f^(k)(zeta) by summing the Taylor series at the base. zeta must lie within
/// safety * r(base); otherwise ErrorKind::no_path is raised.
EvalResult evaluate_local(const DFiniteInstance& inst, const GaussianRational& zeta, long k, const EvalOptions& opt);

/// Instance at beta holding enclosures of f(beta), ..., f^(r-1)(beta).
DFiniteInstance continue_to(const DFiniteInstance& inst, const GaussianRational& beta, const EvalOptions& opt,
                            SegmentReport* report = nullptr);

/// Waypoints from `from` to `to` obeying the step invariant, detouring around singularities
/// on the hinted side. Deterministic.
EvalPath auto_path(const DiffOperator& op, const GaussianRational& from, const GaussianRational& to,
                   const EvalOptions& opt);

/// Refines a user path: every leg is subdivided to obey the step invariant. Legs meeting a
/// singularity enclosure are rejected with ErrorKind::no_path.
EvalPath refine_path(const DiffOperator& op, const EvalPath& path, const EvalOptions& opt);

/// f^(k)(zeta) by analytic continuation along `path` (auto_path when absent).
EvalResult evaluate(const DFiniteInstance& inst, const GaussianRational& zeta, long k, const EvalOptions& opt,
                    const std::optional<EvalPath>& path = std::nullopt);

}  // namespace dfinum
