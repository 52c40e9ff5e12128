#pragma once

#include "dfinum/algebraic.hpp"
#include "dfinum/ore.hpp"

#include <optional>
#include <string>

namespace dfinum {

/// A P-recursive sequence given by a recurrence and enough initial terms to unroll it.
struct ConvergentRecurrence {
    ShiftOperator op;
    SequenceWindow initial;
    std::optional<Enclosure> target_hint;
};

/// P(z, y) = p((1 - z) y) - p(eta) (1 - z); P(0, eta) = 0.
BivariatePolynomial build_lemma_polynomial(const GPoly& p, const GaussianRational& eta);

/// Recurrence and initial terms for the Taylor coefficients of the root of
/// build_lemma_polynomial(p, eta) with constant term eta. The window reaches past every
/// nonnegative integer root of the recurrence's leading coefficient.
ConvergentRecurrence root_sequence(const GPoly& p, const GaussianRational& eta);

struct LimitResult {
    /// Midpoint = last iterate; radius = rounding + heuristic tail estimate.
    Enclosure value;
    /// Set when the trailing window is an exact fixed point of the recurrence.
    std::optional<GaussianRational> exact;
    std::size_t terms = 0;
    /// Largest ratio of successive difference magnitudes in the trailing window.
    double ratio = 0.0;
    bool tolerance_met = false;
    /// "exact" when `exact` is set, "heuristic-tail" otherwise.
    std::string rigor = "heuristic-tail";
};

/// Empirical limit: unrolls until the tail estimate 4 |d_N| q / (1 - q) drops below tol or
/// the budget is exhausted. Throws ErrorKind::no_convergence without contraction evidence.
LimitResult limit_of_recurrence(const ConvergentRecurrence& c, double tol, std::size_t budget, mpfr_prec_t prec);

struct RootSequenceLimit {
    ConvergentRecurrence sequence;
    LimitResult limit;
    RootDisk root;
};

/// root_sequence followed by limit detection and identification of the certified root disk
/// of p containing the limit. An enclosure meeting several disks triggers one retry with
/// doubled precision and budget; persistent ambiguity raises ErrorKind::ambiguous_root.
RootSequenceLimit root_sequence_limit(const GPoly& p, const GaussianRational& eta, double tol, std::size_t budget,
                                      mpfr_prec_t prec);

struct FunctionLimit {
    DiffOperator op;
    std::string note;
};

/// Annihilator of g(z) = (1 - z) sum a_n z^n, whose limit as z -> 1- equals lim a_n.
FunctionLimit to_function_limit(const ConvergentRecurrence& c);

}  // namespace dfinum
