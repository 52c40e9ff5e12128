#pragma once

#include "dfinum/algebraic.hpp"
#include "dfinum/enclosure.hpp"
#include "dfinum/evaluator.hpp"
#include "dfinum/ore.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dfinum {

// --- parsing (all failures raise ErrorKind::parse) ---------------------------

/// Constant expression over Q(i): integers, decimals with optional exponent, `i`,
/// + - * / ^ and parentheses.
GaussianRational parse_gaussian(std::string_view text);

/// Polynomial expression in `var`; division only by nonzero constants, `^` takes a
/// nonnegative integer literal. `i` is reserved for the imaginary unit.
GPoly parse_polynomial(std::string_view text, std::string_view var);

/// An operator in either algebra together with its variable name.
struct ParsedOperator {
    std::variant<DiffOperator, ShiftOperator> op;
    std::string var;

    bool is_diff() const { return std::holds_alternative<DiffOperator>(op); }
    const DiffOperator& diff() const;
    const ShiftOperator& shift() const;
};

/// `diff z: [p0; p1; ...; pr]` or `shift n: [p0; ...; pr]`.
ParsedOperator parse_operator(std::string_view text);
DiffOperator parse_diffop(std::string_view text);
ShiftOperator parse_shiftop(std::string_view text);

/// `poly z,y: [[c0(z)], [c1(z)], ...]`, row j holding the coefficient of y^j.
BivariatePolynomial parse_bivariate(std::string_view text);

/// Gaussian literal or `~mid±rad` (also `~mid+-rad`).
NumberValue parse_number_value(std::string_view text, mpfr_prec_t prec);

/// `[a, b, ...]`; the brackets are optional.
std::vector<std::string> split_list(std::string_view text);
std::vector<GaussianRational> parse_point_list(std::string_view text);

/// `instance { op: <diff op>; base: <gaussian>; ics: [<numbervalue>, ...] }`.
DFiniteInstance parse_instance(std::string_view text, mpfr_prec_t prec);

// --- printing -------------------------------------------------------------

/// Canonical text, highest degree first, e.g. `3*z^2 - 1/2*z + (1+2*i)`.
std::string format_polynomial(const GPoly& p, std::string_view var);

std::string format_operator(const DiffOperator& op, std::string_view var = "z");
std::string format_operator(const ShiftOperator& op, std::string_view var = "n");
std::string format_operator(const ParsedOperator& op);

std::string format_bivariate(const BivariatePolynomial& p, std::string_view z = "z", std::string_view y = "y");

/// Midpoint rounded to nearest and an upper bound on its distance to every point of the
/// enclosure.
struct DecimalText {
    std::string mid;
    std::string rad;
};

/// At most `digits` significant digits; no digit is printed below the magnitude of the
/// radius. The radius has two significant digits, rounded up.
DecimalText format_decimal(const Enclosure& x, long digits);

/// `mid ± rad`.
std::string format_enclosure(const Enclosure& x, long digits);

/// Gaussian text for exact values, `~mid±rad` otherwise (re-parses to a superset).
std::string format_number_value(const NumberValue& v, long digits);

std::string format_instance(const DFiniteInstance& inst, long digits = 30);

}  // namespace dfinum
