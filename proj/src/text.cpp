#include "dfinum/text.hpp"

#include "dfinum/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace dfinum {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_fail(const std::string& what, std::string_view text) {
    fail(ErrorKind::parse, what + " in '" + std::string(text) + "'");
}

/// Recursive-descent evaluator for polynomial expressions in one variable.
class ExprParser {
public:
    ExprParser(std::string_view text, std::string_view var) : text_(text), var_(var) {}

    GPoly parse() {
        if (trim(text_).empty()) parse_fail("empty expression", text_);
        GPoly v = expr();
        skip_ws();
        if (pos_ != text_.size()) parse_fail("unexpected '" + std::string(1, text_[pos_]) + "'", text_);
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    GPoly expr() {
        GPoly v = term();
        while (true) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    GPoly term() {
        GPoly v = unary();
        while (true) {
            if (accept('*')) {
                v = v * unary();
            } else if (accept('/')) {
                GPoly d = unary();
                if (!d.is_constant() || d.is_zero()) parse_fail("division by a non-constant or zero", text_);
                v = v * d.coeff(0).inverse();
            } else {
                return v;
            }
        }
    }

    GPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    GPoly power() {
        GPoly base = atom();
        if (!accept('^')) return base;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) parse_fail("exponent must be a nonnegative integer literal", text_);
        const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
        if (e > 100000) parse_fail("exponent too large", text_);
        return base.pow(static_cast<unsigned>(e));
    }

    GPoly atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            GPoly v = expr();
            if (!accept(')')) parse_fail("missing ')'", text_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return GPoly(number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "i") return GPoly(GaussianRational::i());
            if (!var_.empty() && name == var_) return GPoly::x();
            parse_fail("unknown symbol '" + std::string(name) + "'" +
                           (var_.empty() ? std::string(" (constant expected)")
                                         : " (variable is '" + std::string(var_) + "')"),
                       text_);
        }
        if (c == '\0') parse_fail("unexpected end of input", text_);
        parse_fail("unexpected '" + std::string(1, c) + "'", text_);
    }

    /// Decimal literal with optional fraction and exponent, converted exactly.
    GaussianRational number() {
        std::string digits;
        long scale = 0;
        bool any = false;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            digits += text_[pos_++];
            any = true;
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_++];
                --scale;
                any = true;
            }
        }
        if (!any) parse_fail("malformed number", text_);
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            bool neg = false;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) neg = text_[p++] == '-';
            const std::size_t start = p;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
            if (p > start) {
                const long e = std::stol(std::string(text_.substr(start, p - start)));
                if (e > 100000) parse_fail("exponent too large", text_);
                scale += neg ? -e : e;
                pos_ = p;
            }
        }
        BigRational v{BigInteger(digits, 10)};
        BigInteger ten;
        mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
        if (scale >= 0)
            v *= ten;
        else
            v /= ten;
        v.canonicalize();
        return GaussianRational(v);
    }

    std::string_view text_;
    std::string_view var_;
    std::size_t pos_ = 0;
};

/// Splits at `sep` outside (), [] and {}.
std::vector<std::string> split_top(std::string_view text, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char c = text[k];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (depth < 0) parse_fail("unbalanced brackets", text);
        if (c == sep && depth == 0) {
            parts.emplace_back(trim(text.substr(start, k - start)));
            start = k + 1;
        }
    }
    if (depth != 0) parse_fail("unbalanced brackets", text);
    parts.emplace_back(trim(text.substr(start)));
    return parts;
}

/// Contents of `[ ... ]` (the whole trimmed text must be bracketed).
std::string_view bracketed(std::string_view text, char open, char close) {
    text = trim(text);
    if (text.size() < 2 || text.front() != open || text.back() != close)
        parse_fail(std::string("expected '") + open + "..." + close + "'", text);
    return text.substr(1, text.size() - 2);
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

/// `<keyword> <header>: <body>` split at the first ':'.
std::pair<std::string, std::string> header_body(std::string_view text, std::string_view keyword) {
    text = trim(text);
    if (text.substr(0, keyword.size()) != keyword) parse_fail("expected '" + std::string(keyword) + "'", text);
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) parse_fail("missing ':'", text);
    return {std::string(trim(text.substr(keyword.size(), colon - keyword.size()))),
            std::string(trim(text.substr(colon + 1)))};
}

std::vector<GPoly> parse_rows(std::string_view body, std::string_view var) {
    std::vector<GPoly> coeffs;
    const std::string_view inner = bracketed(body, '[', ']');
    if (trim(inner).empty()) return coeffs;
    for (const auto& part : split_top(inner, ';')) coeffs.push_back(parse_polynomial(part, var));
    return coeffs;
}

// --- decimal helpers --------------------------------------------------------

BigInteger pow10(long e) {
    BigInteger r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return r;
}

/// 10^e as an exact rational.
BigRational pow10q(long e) {
    return e >= 0 ? BigRational(pow10(e)) : BigRational(BigInteger(1), pow10(-e));
}

/// floor(log10 x) for x > 0.
long floor_log10(const BigRational& x) {
    long e = static_cast<long>(std::floor(log2_abs(x) * 0.30102999566398120));
    while (pow10q(e) > x) --e;
    while (pow10q(e + 1) <= x) ++e;
    return e;
}

/// Nearest integer, ties away from zero.
BigInteger round_nearest(const BigRational& x) {
    BigRational a = abs(x) + BigRational(1, 2);
    BigInteger q = a.get_num() / a.get_den();
    return sgn(x) < 0 ? BigInteger(-q) : q;
}

BigInteger ceil_int(const BigRational& x) {
    BigInteger q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

/// q * 10^p in plain positional notation.
std::string positional(const BigInteger& q, long p) {
    const bool neg = sgn(q) < 0;
    std::string digits = BigInteger(abs(q)).get_str();
    if (p >= 0) {
        if (digits != "0") digits += std::string(static_cast<std::size_t>(p), '0');
    } else {
        const std::size_t frac = static_cast<std::size_t>(-p);
        if (digits.size() <= frac) digits = std::string(frac - digits.size() + 1, '0') + digits;
        digits.insert(digits.size() - frac, ".");
    }
    return (neg ? "-" : "") + digits;
}

/// Two significant digits rounded up, e.g. 1.3e-45; "0" for zero.
std::string radius_text(const BigRational& r) {
    if (sgn(r) <= 0) return "0";
    long e = floor_log10(r);
    BigInteger m = ceil_int(r / pow10q(e - 1));
    if (m >= 100) {
        m = 10;
        ++e;
    }
    const std::string d = m.get_str();
    std::ostringstream s;
    s << d[0] << '.' << d[1] << 'e' << (e < 0 ? "-" : "+") << std::labs(e);
    return s.str();
}

BigRational exact_of_double(double d) {
    BigRational q;
    mpq_set_d(q.get_mpq_t(), d);
    return q;
}

}  // namespace

// --- parsing ------------------------------------------------------------------

GaussianRational parse_gaussian(std::string_view text) {
    GPoly p = ExprParser(text, "").parse();
    return p.coeff(0);
}

GPoly parse_polynomial(std::string_view text, std::string_view var) {
    if (var == "i") fail(ErrorKind::parse, "'i' is reserved for the imaginary unit");
    return ExprParser(text, var).parse();
}

const DiffOperator& ParsedOperator::diff() const {
    if (!is_diff()) fail(ErrorKind::parse, "expected a differential operator, got a recurrence");
    return std::get<DiffOperator>(op);
}

const ShiftOperator& ParsedOperator::shift() const {
    if (is_diff()) fail(ErrorKind::parse, "expected a recurrence operator, got a differential operator");
    return std::get<ShiftOperator>(op);
}

ParsedOperator parse_operator(std::string_view text) {
    text = trim(text);
    const bool diff = text.substr(0, 4) == "diff";
    const bool shift = text.substr(0, 5) == "shift";
    if (!diff && !shift) parse_fail("operator must start with 'diff' or 'shift'", text);
    auto [var, body] = header_body(text, diff ? "diff" : "shift");
    if (!is_identifier(var) || var == "i") parse_fail("invalid variable name '" + var + "'", text);
    std::vector<GPoly> coeffs = parse_rows(body, var);
    ParsedOperator out;
    out.var = var;
    if (diff)
        out.op = DiffOperator(std::move(coeffs));
    else
        out.op = ShiftOperator(std::move(coeffs));
    const bool zero = diff ? out.diff().is_zero() : out.shift().is_zero();
    if (zero) parse_fail("the zero operator is not allowed", text);
    return out;
}

DiffOperator parse_diffop(std::string_view text) { return parse_operator(text).diff(); }
ShiftOperator parse_shiftop(std::string_view text) { return parse_operator(text).shift(); }

BivariatePolynomial parse_bivariate(std::string_view text) {
    auto [vars, body] = header_body(text, "poly");
    const auto names = split_top(vars, ',');
    if (names.size() != 2 || !is_identifier(names[0]) || !is_identifier(names[1]) || names[0] == names[1] ||
        names[0] == "i" || names[1] == "i")
        parse_fail("expected two distinct variable names 'z,y'", text);
    std::vector<GPoly> rows;
    const std::string_view inner = bracketed(body, '[', ']');
    for (const auto& row : split_top(inner, ','))
        rows.push_back(parse_polynomial(bracketed(row, '[', ']'), names[0]));
    while (!rows.empty() && rows.back().is_zero()) rows.pop_back();
    if (rows.size() < 2) parse_fail("polynomial must have positive degree in " + names[1], text);
    return BivariatePolynomial(std::move(rows));
}

NumberValue parse_number_value(std::string_view text, mpfr_prec_t prec) {
    text = trim(text);
    if (text.empty() || text.front() != '~') return parse_gaussian(text);
    text.remove_prefix(1);
    static constexpr std::string_view kPm = "\xC2\xB1";
    std::size_t at = text.rfind(kPm);
    std::size_t len = kPm.size();
    if (at == std::string_view::npos) {
        at = text.rfind("+-");
        len = 2;
    }
    if (at == std::string_view::npos) parse_fail("enclosure literal needs '±' or '+-'", text);
    const GaussianRational mid = parse_gaussian(text.substr(0, at));
    const std::string rad_text(trim(text.substr(at + len)));
    char* end = nullptr;
    const double rad = std::strtod(rad_text.c_str(), &end);
    if (rad_text.empty() || end != rad_text.c_str() + rad_text.size() || !(rad >= 0.0) || std::isinf(rad))
        parse_fail("malformed radius", text);
    return Enclosure::exact(mid, prec).widened(rad > 0.0 ? rounding::up(rad) : 0.0);
}

std::vector<std::string> split_list(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '[') text = bracketed(text, '[', ']');
    if (trim(text).empty()) return {};
    return split_top(text, ',');
}

std::vector<GaussianRational> parse_point_list(std::string_view text) {
    std::vector<GaussianRational> out;
    for (const auto& item : split_list(text)) out.push_back(parse_gaussian(item));
    return out;
}

DFiniteInstance parse_instance(std::string_view text, mpfr_prec_t prec) {
    text = trim(text);
    if (text.substr(0, 8) != "instance") parse_fail("expected 'instance { ... }'", text);
    const std::string_view body = bracketed(text.substr(8), '{', '}');
    std::optional<DiffOperator> op;
    std::optional<GaussianRational> base;
    std::optional<std::vector<NumberValue>> ics;
    for (const auto& field : split_top(body, ';')) {
        if (field.empty()) continue;
        const std::size_t colon = field.find(':');
        if (colon == std::string::npos) parse_fail("field without ':'", field);
        const std::string key(trim(std::string_view(field).substr(0, colon)));
        const std::string_view value = trim(std::string_view(field).substr(colon + 1));
        if (key == "op") {
            op = parse_diffop(value);
        } else if (key == "base") {
            base = parse_gaussian(value);
        } else if (key == "ics") {
            ics.emplace();
            for (const auto& item : split_list(value)) ics->push_back(parse_number_value(item, prec));
        } else {
            parse_fail("unknown field '" + key + "'", text);
        }
    }
    if (!op || !base || !ics) parse_fail("instance needs op, base and ics", text);
    return DFiniteInstance(*op, *base, *ics);
}

// --- printing -------------------------------------------------------------------

std::string format_polynomial(const GPoly& p, std::string_view var) {
    if (p.is_zero()) return "0";
    if (p.is_constant()) return p.coeff(0).str();
    std::string out;
    for (long d = p.degree(); d >= 0; --d) {
        const GaussianRational c = p.coeff(static_cast<std::size_t>(d));
        if (c.is_zero()) continue;
        std::string mono;
        if (d >= 1) mono = std::string(var) + (d > 1 ? "^" + std::to_string(d) : "");
        const bool complex = !c.is_real() && sgn(c.re()) != 0;
        bool negative = false;
        std::string mag;
        if (complex) {
            mag = "(" + c.str() + ")";
        } else {
            // Real or purely imaginary: pull the sign out.
            negative = c.is_real() ? sgn(c.re()) < 0 : sgn(c.im()) < 0;
            mag = (negative ? -c : c).str();
        }
        std::string t;
        if (mono.empty())
            t = mag;
        else if (mag == "1")
            t = mono;
        else
            t = mag + "*" + mono;
        if (out.empty())
            out = (negative ? "-" : "") + t;
        else
            out += (negative ? " - " : " + ") + t;
    }
    return out;
}

namespace {

template <OreKind K>
std::string format_op(const OreOperator<K>& op, std::string_view keyword, std::string_view var) {
    std::string out = std::string(keyword) + " " + std::string(var) + ": [";
    for (std::size_t j = 0; j < op.coeffs().size(); ++j) {
        if (j) out += "; ";
        out += format_polynomial(op.coeffs()[j], var);
    }
    return out + "]";
}

}  // namespace

std::string format_operator(const DiffOperator& op, std::string_view var) { return format_op(op, "diff", var); }
std::string format_operator(const ShiftOperator& op, std::string_view var) { return format_op(op, "shift", var); }
std::string format_operator(const ParsedOperator& op) {
    return op.is_diff() ? format_operator(op.diff(), op.var) : format_operator(op.shift(), op.var);
}

std::string format_bivariate(const BivariatePolynomial& p, std::string_view z, std::string_view y) {
    std::string out = "poly " + std::string(z) + "," + std::string(y) + ": [";
    for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
        if (j) out += ", ";
        out += "[" + format_polynomial(p.coeffs()[j], z) + "]";
    }
    return out + "]";
}

DecimalText format_decimal(const Enclosure& x, long digits) {
    digits = std::max(1L, digits);
    const BigRational re = x.re().to_rational(), im = x.im().to_rational();
    const BigRational rad = exact_of_double(x.rad());
    const BigRational mag = std::max(abs(re), abs(im));
    long p = 0;
    bool have_p = false;
    if (sgn(mag) > 0) {
        p = floor_log10(mag) - digits + 1;
        have_p = true;
    }
    if (sgn(rad) > 0) {
        const long rp = floor_log10(rad);
        p = have_p ? std::max(p, rp) : rp;
        have_p = true;
    }
    if (!have_p) return {"0", "0"};
    const BigRational unit = pow10q(p);
    const BigInteger qr = round_nearest(re / unit), qi = round_nearest(im / unit);
    const BigRational err = rad + abs(re - BigRational(qr) * unit) + abs(im - BigRational(qi) * unit);
    std::string mid;
    if (sgn(qr) != 0) mid = positional(qr, p);
    if (sgn(qi) != 0) {
        const std::string imag = positional(BigInteger(abs(qi)), p) + "*i";
        if (mid.empty())
            mid = (sgn(qi) < 0 ? "-" : "") + imag;
        else
            mid += (sgn(qi) < 0 ? " - " : " + ") + imag;
    }
    if (mid.empty()) mid = "0";
    return {mid, radius_text(err)};
}

std::string format_enclosure(const Enclosure& x, long digits) {
    const DecimalText t = format_decimal(x, digits);
    return t.mid + " ± " + t.rad;
}

std::string format_number_value(const NumberValue& v, long digits) {
    if (is_exact(v)) return std::get<GaussianRational>(v).str();
    DecimalText t = format_decimal(std::get<Enclosure>(v), digits);
    std::string mid;
    for (char c : t.mid)
        if (c != ' ') mid += c;
    return "~" + mid + "±" + t.rad;
}

std::string format_instance(const DFiniteInstance& inst, long digits) {
    std::string out = "instance { op: " + format_operator(inst.op()) + "; base: " + inst.base().str() + "; ics: [";
    for (std::size_t k = 0; k < inst.ics().size(); ++k) {
        if (k) out += ", ";
        out += format_number_value(inst.ics()[k], digits);
    }
    return out + "] }";
}

}  // namespace dfinum
