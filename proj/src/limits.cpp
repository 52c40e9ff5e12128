#include "dfinum/limits.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace dfinum {

namespace {

constexpr std::size_t kWindow = 8;
constexpr double kInflation = 4.0;

/// Terms of a recurrence produced one at a time; exact whenever the seeds are exact.
class TermStream {
public:
    TermStream(const ShiftOperator& rec, const SequenceWindow& initial, mpfr_prec_t prec)
        : rec_(rec), prec_(prec), next_index_(initial.offset) {
        for (const auto& v : initial.values) push(v);
    }

    std::size_t next_index() const { return next_index_; }
    const std::deque<NumberValue>& recent() const { return recent_; }

    void advance() {
        const long r = rec_.order();
        const long n = static_cast<long>(next_index_) - r;
        const GaussianRational nn(n);
        const GaussianRational lead = rec_.lc()(nn);
        if (lead.is_zero())
            fail(ErrorKind::precondition, "leading coefficient of the recurrence vanishes at index " + std::to_string(n));
        const std::size_t base = recent_.size() - static_cast<std::size_t>(r);
        bool exact = true;
        for (std::size_t k = base; k < recent_.size() && exact; ++k) exact = is_exact(recent_[k]);
        if (exact) {
            GaussianRational acc;
            for (long j = 0; j < r; ++j) {
                const auto& x = std::get<GaussianRational>(recent_[base + static_cast<std::size_t>(j)]);
                if (!x.is_zero()) acc += rec_.coeff(static_cast<std::size_t>(j))(nn) * x;
            }
            push(NumberValue(acc.is_zero() ? acc : -acc / lead));
        } else {
            Enclosure acc(prec_);
            for (long j = 0; j < r; ++j) {
                const GaussianRational c = rec_.coeff(static_cast<std::size_t>(j))(nn);
                if (!c.is_zero())
                    acc += Enclosure::exact(c, prec_) * to_enclosure(recent_[base + static_cast<std::size_t>(j)], prec_);
            }
            push(NumberValue(-(acc * Enclosure::exact(lead.inverse(), prec_))));
        }
    }

private:
    void push(NumberValue v) {
        recent_.push_back(std::move(v));
        ++next_index_;
        const std::size_t keep = std::max<std::size_t>(kWindow + 2, static_cast<std::size_t>(rec_.order()) + 1);
        while (recent_.size() > keep) recent_.pop_front();
    }

    const ShiftOperator& rec_;
    mpfr_prec_t prec_;
    std::size_t next_index_;
    std::deque<NumberValue> recent_;
};

struct Magnitude {
    double upper;  // log2 of an upper bound on |d|
    double lower;  // log2 of a lower bound on |d|; -inf when zero is possible
    bool exact_zero;
};

Magnitude difference_magnitude(const NumberValue& a, const NumberValue& b, mpfr_prec_t prec) {
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    if (is_exact(a) && is_exact(b)) {
        const GaussianRational d = std::get<GaussianRational>(b) - std::get<GaussianRational>(a);
        if (d.is_zero()) return {ninf, ninf, true};
        const double l = log2_abs(d);
        return {l + 1e-9, l - 1e-9, false};
    }
    const Enclosure d = to_enclosure(b, prec) - to_enclosure(a, prec);
    const double up = d.abs_upper(), lo = d.abs_lower();
    return {up > 0 ? std::log2(up) : ninf, lo > 0 ? std::log2(lo) : ninf, false};
}

/// Whether the constant c continues to satisfy the recurrence for every later index.
bool constant_is_fixed_point(const ShiftOperator& rec, const GaussianRational& c) {
    if (c.is_zero()) return true;
    GPoly sum;
    for (const auto& p : rec.coeffs()) sum += p;
    return sum.is_zero();
}

double radius_from_log2(double l) {
    if (l < -1070) return std::numeric_limits<double>::denorm_min();
    return rounding::up(std::ldexp(1.0, static_cast<int>(std::ceil(l))));
}

}  // namespace

BivariatePolynomial build_lemma_polynomial(const GPoly& p, const GaussianRational& eta) {
    if (p.degree() < 1) fail(ErrorKind::precondition, "lemma polynomial needs a nonconstant p");
    const GPoly u = GPoly(1) - GPoly::x();
    std::vector<GPoly> rows;
    GPoly power(1);
    for (const auto& c : p.coeffs()) {
        rows.push_back(power * c);
        power *= u;
    }
    rows[0] -= u * p(eta);
    return BivariatePolynomial(std::move(rows));
}

ConvergentRecurrence root_sequence(const GPoly& p, const GaussianRational& eta) {
    if (p.degree() < 1) fail(ErrorKind::precondition, "root_sequence needs a nonconstant p");
    if (p.derivative()(eta).is_zero())
        fail(ErrorKind::precondition, "p'(eta) = 0: eta is a critical point; choose a perturbed eta");
    const BivariatePolynomial lemma = build_lemma_polynomial(p, eta);
    const ShiftOperator rec = diffop_to_rec(alg_to_diffop(lemma));
    std::size_t len = static_cast<std::size_t>(rec.order());
    const auto zeros = nonnegative_integer_roots(rec.lc());
    if (!zeros.empty()) len += static_cast<std::size_t>(zeros.back()) + 1;
    SeriesRoot root = series_root(lemma, eta, std::max<std::size_t>(len, 1));
    ConvergentRecurrence out{rec, {0, {}}, std::nullopt};
    for (std::size_t k = 0; k < len; ++k) out.initial.values.emplace_back(root.coeffs()[k]);
    return out;
}

LimitResult limit_of_recurrence(const ConvergentRecurrence& c, double tol, std::size_t budget, mpfr_prec_t prec) {
    const long r = c.op.order();
    if (r < 1) fail(ErrorKind::precondition, "limit needs a recurrence of order >= 1");
    if (c.initial.values.size() < static_cast<std::size_t>(r))
        fail(ErrorKind::precondition, "initial window shorter than the recurrence order");
    const std::size_t start = c.initial.offset + c.initial.values.size();
    for (long z : nonnegative_integer_roots(c.op.lc()))
        if (static_cast<std::size_t>(z) + static_cast<std::size_t>(r) >= start)
            fail(ErrorKind::precondition, "leading coefficient of the recurrence vanishes at index " + std::to_string(z) +
                                              " past the initial window");

    const mpfr_prec_t work = prec + 64;
    TermStream stream(c.op, c.initial, work);
    std::optional<LimitResult> last;
    while (true) {
        const auto& v = stream.recent();
        if (v.size() >= kWindow + 2) {
            std::vector<Magnitude> d;
            for (std::size_t k = v.size() - kWindow - 1; k < v.size(); ++k) d.push_back(difference_magnitude(v[k - 1], v[k], work));
            const NumberValue& head = v.back();
            const bool all_zero = std::all_of(d.begin(), d.end(), [](const Magnitude& m) { return m.exact_zero; });
            if (all_zero && r <= static_cast<long>(kWindow) + 1 &&
                constant_is_fixed_point(c.op, std::get<GaussianRational>(head))) {
                const auto& x = std::get<GaussianRational>(head);
                LimitResult res{Enclosure::exact(x, prec), x, stream.next_index(), 0.0, true, "exact"};
                return res;
            }
            double lq = -std::numeric_limits<double>::infinity();
            bool usable = true;
            for (std::size_t k = 1; k < d.size(); ++k) {
                if (d[k - 1].lower == -std::numeric_limits<double>::infinity() || std::isnan(d[k].upper)) {
                    usable = false;
                    break;
                }
                lq = std::max(lq, d[k].upper - d[k - 1].lower);
            }
            if (usable && lq < 0) {
                const double q = std::exp2(lq);
                const double tail_log2 = d.back().upper + std::log2(kInflation * q / (1.0 - q));
                const double tail = radius_from_log2(tail_log2);
                Enclosure value = to_enclosure(head, prec);
                if (!is_exact(head)) value = value.widened(std::get<Enclosure>(head).rad());
                LimitResult res{value.widened(tail), std::nullopt, stream.next_index(), q, tail <= tol};
                if (res.tolerance_met) return res;
                last = std::move(res);
            } else {
                last.reset();
            }
        }
        if (stream.next_index() >= budget) break;
        stream.advance();
    }
    if (last) return *last;
    fail(ErrorKind::no_convergence, "no convergence evidence within " + std::to_string(budget) + " terms");
}

RootSequenceLimit root_sequence_limit(const GPoly& p, const GaussianRational& eta, double tol, std::size_t budget,
                                      mpfr_prec_t prec) {
    ConvergentRecurrence seq = root_sequence(p, eta);
    for (int attempt = 0; attempt < 2; ++attempt) {
        LimitResult lim = limit_of_recurrence(seq, tol, budget, prec);
        std::vector<RootDisk> hits;
        for (auto& d : complex_roots(p, prec))
            if (d.disk.overlaps(lim.value)) hits.push_back(std::move(d));
        if (hits.size() == 1) return {seq, std::move(lim), std::move(hits.front())};
        if (hits.empty())
            fail(ErrorKind::no_convergence, "limit enclosure " + lim.value.debug_str() + " meets no root disk of p");
        prec *= 2;
        budget *= 2;
        tol /= 1024;
    }
    fail(ErrorKind::ambiguous_root, "limit enclosure meets several root disks");
}

FunctionLimit to_function_limit(const ConvergentRecurrence& c) {
    if (c.initial.offset != 0)
        fail(ErrorKind::precondition, "to_function_limit needs a sequence starting at index 0");
    const RecToDiffResult m = rec_to_diffop(c.op);
    const DiffOperator f_op = homogenize(m.op, m.residual_degree_bound);
    const DiffOperator one_minus_z(std::vector<GPoly>{GPoly(1), GPoly(1) - GPoly::x()});
    return {annihilator_product(f_op, one_minus_z),
            "annihilates g(z) = (1 - z) * sum a_n z^n; the limit of a_n equals lim_{z -> 1-} g(z)"};
}

}  // namespace dfinum
