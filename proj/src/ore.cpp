#include "dfinum/ore.hpp"

#include "dfinum/ansatz.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace dfinum {

namespace {

template <OreKind K>
GPoly sigma(const GPoly& p) {
    if constexpr (K == OreKind::shift)
        return p.taylor_shift(GaussianRational(1));
    else
        return p;
}

template <OreKind K>
RationalFunction sigma(const RationalFunction& f) {
    if constexpr (K == OreKind::shift)
        return f.shifted();
    else
        return f;
}

template <OreKind K>
RationalFunction delta(const RationalFunction& f) {
    if constexpr (K == OreKind::diff)
        return f.derivative();
    else
        return RationalFunction();
}

/// p_k / p_r for k < r: the monic form of an operator over F(x).
template <OreKind K>
std::vector<RationalFunction> monic_tail(const OreOperator<K>& op) {
    std::vector<RationalFunction> tail;
    const GPoly& lc = op.lc();
    for (long k = 0; k < op.order(); ++k) tail.emplace_back(op.coeff(static_cast<std::size_t>(k)), lc);
    return tail;
}

/// d * (sum v_j d^j) reduced modulo the operator whose monic tail is given (right remainder).
template <OreKind K>
RFVector generator_action_mod(const RFVector& v, const std::vector<RationalFunction>& tail) {
    const std::size_t r = v.size();
    RFVector out(r);
    if (r == 0) return out;
    for (std::size_t j = 0; j < r; ++j) {
        if constexpr (K == OreKind::diff) out[j] = delta<K>(v[j]);
        if (j > 0 && !v[j - 1].is_zero()) out[j] += sigma<K>(v[j - 1]);
    }
    const RationalFunction top = sigma<K>(v[r - 1]);
    if (!top.is_zero())
        for (std::size_t k = 0; k < r; ++k)
            if (!tail[k].is_zero()) out[k] -= top * tail[k];
    return out;
}

GPoly content_of(const std::vector<GPoly>& coeffs) {
    GPoly c;
    for (const auto& p : coeffs) {
        c = GPoly::gcd(c, p);
        if (c.degree() == 0) break;
    }
    return c;
}

/// Product of (x - m)^mult over the nonnegative integer roots m of c.
GPoly integer_root_part(const GPoly& c) {
    GPoly keep(1);
    if (c.degree() <= 0) return keep;
    for (long m : nonnegative_integer_roots(c)) {
        GPoly lin(std::vector<GaussianRational>{GaussianRational(-m), GaussianRational(1)});
        GPoly rest = c;
        while (true) {
            auto [qq, rr] = GPoly::divrem(rest, lin);
            if (!rr.is_zero()) break;
            keep *= lin;
            rest = qq;
        }
    }
    return keep;
}

template <OreKind K>
OreOperator<K> scale_monic(std::vector<GPoly> coeffs) {
    OreOperator<K> op(std::move(coeffs));
    if (op.is_zero()) return op;
    GaussianRational inv = op.lc().lc().inverse();
    std::vector<GPoly> c = op.coeffs();
    for (auto& p : c) p = p * inv;
    return OreOperator<K>(std::move(c));
}

}  // namespace

template <OreKind K>
OreOperator<K> OreOperator<K>::left_generator_mul() const {
    std::vector<GPoly> out(coeffs_.size() + 1);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        out[j + 1] += sigma<K>(coeffs_[j]);
        if constexpr (K == OreKind::diff) out[j] += coeffs_[j].derivative();
    }
    return OreOperator(std::move(out));
}

template <OreKind K>
OreOperator<K> op_mul(const OreOperator<K>& a, const OreOperator<K>& b) {
    OreOperator<K> result;
    OreOperator<K> power = b;  // d^i * b
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (!a.coeffs()[i].is_zero()) result = result + a.coeffs()[i] * power;
        if (i + 1 < a.coeffs().size()) power = power.left_generator_mul();
    }
    return result;
}

template <OreKind K>
OreOperator<K> normalize(const OreOperator<K>& op) {
    if (op.is_zero()) return op;
    GPoly c = content_of(op.coeffs());
    if constexpr (K == OreKind::shift) c = c / integer_root_part(c);
    std::vector<GPoly> coeffs = op.coeffs();
    if (c.degree() > 0)
        for (auto& p : coeffs) p = p / c;
    return scale_monic<K>(std::move(coeffs));
}

template <OreKind K>
OreOperator<K> operator_from_relation(const std::vector<RationalFunction>& relation) {
    GPoly common(1);
    for (const auto& c : relation)
        if (!c.is_zero()) common = common * (c.den() / GPoly::gcd(common, c.den()));
    std::vector<GPoly> coeffs;
    for (const auto& c : relation) coeffs.push_back(c.is_zero() ? GPoly() : c.num() * (common / c.den()));
    return normalize(OreOperator<K>(std::move(coeffs)));
}

template <OreKind K>
OreOperator<K> lclm(const OreOperator<K>& a, const OreOperator<K>& b) {
    if (a.is_zero() || b.is_zero()) fail(ErrorKind::precondition, "lclm of the zero operator");
    const auto ta = monic_tail(a), tb = monic_tail(b);
    const std::size_t ra = ta.size(), rb = tb.size();
    RFVector start(ra + rb);
    if (ra > 0) start[0] = RationalFunction(1);
    if (rb > 0) start[ra] = RationalFunction(1);
    auto step = [&](const RFVector& v) {
        RFVector va(v.begin(), v.begin() + static_cast<long>(ra)), vb(v.begin() + static_cast<long>(ra), v.end());
        RFVector out = generator_action_mod<K>(va, ta);
        RFVector ob = generator_action_mod<K>(vb, tb);
        out.insert(out.end(), ob.begin(), ob.end());
        return out;
    };
    return operator_from_relation<K>(first_relation(std::move(start), step));
}

template <OreKind K>
OreOperator<K> conjugate_op(const OreOperator<K>& op) {
    std::vector<GPoly> c;
    for (const auto& p : op.coeffs()) c.push_back(conj(p));
    return OreOperator<K>(std::move(c));
}

template <OreKind K>
OreOperator<K> realify(const OreOperator<K>& op) {
    return lclm(op, conjugate_op(op));
}

template <OreKind K>
OreOperator<K> annihilator_sum(const OreOperator<K>& a, const OreOperator<K>& b) {
    return lclm(a, b);
}

template <OreKind K>
OreOperator<K> annihilator_product(const OreOperator<K>& a, const OreOperator<K>& b) {
    if (a.is_zero() || b.is_zero()) fail(ErrorKind::precondition, "annihilator_product of the zero operator");
    const auto ta = monic_tail(a), tb = monic_tail(b);
    const std::size_t ra = ta.size(), rb = tb.size();
    if (ra == 0 || rb == 0) return OreOperator<K>(GPoly(1));  // the product is identically zero

    // Expansion of the "next" index: either a basis element directly or, at the top,
    // the reduction x_r = -sum_k tail_k x_k.
    auto next = [](std::size_t i, const std::vector<RationalFunction>& tail) {
        std::vector<std::pair<std::size_t, RationalFunction>> out;
        if (i + 1 < tail.size())
            out.emplace_back(i + 1, RationalFunction(1));
        else
            for (std::size_t k = 0; k < tail.size(); ++k)
                if (!tail[k].is_zero()) out.emplace_back(k, -tail[k]);
        return out;
    };
    RFVector start(ra * rb);
    start[0] = RationalFunction(1);
    auto step = [&](const RFVector& v) {
        RFVector out(ra * rb);
        for (std::size_t i = 0; i < ra; ++i)
            for (std::size_t j = 0; j < rb; ++j) {
                const RationalFunction& c = v[i * rb + j];
                if (c.is_zero()) continue;
                if constexpr (K == OreKind::shift) {
                    const RationalFunction s = sigma<K>(c);
                    for (const auto& [ii, ca] : next(i, ta))
                        for (const auto& [jj, cb] : next(j, tb)) out[ii * rb + jj] += s * ca * cb;
                } else {
                    out[i * rb + j] += delta<K>(c);
                    for (const auto& [ii, ca] : next(i, ta)) out[ii * rb + j] += c * ca;
                    for (const auto& [jj, cb] : next(j, tb)) out[i * rb + jj] += c * cb;
                }
            }
        return out;
    };
    return operator_from_relation<K>(first_relation(std::move(start), step));
}

template <OreKind K>
bool right_divisible(const OreOperator<K>& a, const OreOperator<K>& b) {
    if (b.is_zero()) fail(ErrorKind::precondition, "right division by the zero operator");
    const auto tail = monic_tail(b);
    RFVector power(tail.size()), acc(tail.size());
    if (!tail.empty()) power[0] = RationalFunction(1);
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        if (!a.coeffs()[k].is_zero())
            for (std::size_t j = 0; j < tail.size(); ++j)
                if (!power[j].is_zero()) acc[j] += RationalFunction(a.coeffs()[k]) * power[j];
        power = generator_action_mod<K>(power, tail);
    }
    return std::all_of(acc.begin(), acc.end(), [](const RationalFunction& f) { return f.is_zero(); });
}

// --- conversions ------------------------------------------------------------

long diffop_to_rec_min_shift(const DiffOperator& op) {
    if (op.is_zero()) fail(ErrorKind::precondition, "diffop_to_rec of the zero operator");
    long kmin = std::numeric_limits<long>::max();
    for (std::size_t j = 0; j < op.coeffs().size(); ++j) {
        const auto& p = op.coeffs()[j];
        for (std::size_t a = 0; a < p.coeffs().size(); ++a)
            if (!p.coeffs()[a].is_zero()) kmin = std::min(kmin, static_cast<long>(j) - static_cast<long>(a));
    }
    return kmin;
}

ShiftOperator diffop_to_rec(const DiffOperator& op) {
    // z^a D^j maps [z^m] to (m + j - a)^(falling j) a_{m + j - a}; reindex n = m + kmin.
    const long kmin = diffop_to_rec_min_shift(op);
    std::vector<GPoly> rec;
    for (std::size_t j = 0; j < op.coeffs().size(); ++j) {
        const auto& p = op.coeffs()[j];
        for (std::size_t a = 0; a < p.coeffs().size(); ++a) {
            if (p.coeffs()[a].is_zero()) continue;
            const long s = static_cast<long>(j) - static_cast<long>(a) - kmin;
            if (rec.size() <= static_cast<std::size_t>(s)) rec.resize(static_cast<std::size_t>(s) + 1);
            rec[static_cast<std::size_t>(s)] += falling_factorial_shifted(s, static_cast<unsigned>(j)) * p.coeffs()[a];
        }
    }
    return scale_monic<OreKind::shift>(std::move(rec));
}

RecToDiffResult rec_to_diffop(const ShiftOperator& rec) {
    if (rec.is_zero()) fail(ErrorKind::precondition, "rec_to_diffop of the zero operator");
    // sum_j p_j(n) a_{n+j} = 0 becomes sum_j z^(r-j) p_j(theta - j) f = polynomial of degree < r,
    // where theta = z D.
    const long r = rec.order();
    const GPoly z = GPoly::x();
    const DiffOperator theta(std::vector<GPoly>{GPoly(), z});
    DiffOperator m;
    for (long j = 0; j <= r; ++j) {
        const GPoly& p = rec.coeffs()[static_cast<std::size_t>(j)];
        if (p.is_zero()) continue;
        const DiffOperator shifted_theta = theta - DiffOperator(GPoly(GaussianRational(j)));
        DiffOperator acc;
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
            acc = acc * shifted_theta + DiffOperator(GPoly(*it));
        m = m + GPoly::monomial(GaussianRational(1), static_cast<std::size_t>(r - j)) * acc;
    }
    long bound = r - 1;
    // Divide out the common power of z (the residual is divisible by it too).
    long val = std::numeric_limits<long>::max();
    for (const auto& p : m.coeffs()) {
        if (p.is_zero()) continue;
        long v = 0;
        while (p.coeffs()[static_cast<std::size_t>(v)].is_zero()) ++v;
        val = std::min(val, v);
    }
    if (val > 0 && val != std::numeric_limits<long>::max()) {
        std::vector<GPoly> c;
        for (const auto& p : m.coeffs()) {
            std::vector<GaussianRational> cc(p.coeffs().begin() + std::min<long>(val, p.degree() + 1), p.coeffs().end());
            c.push_back(GPoly(std::move(cc)));
        }
        m = DiffOperator(std::move(c));
        bound = std::max(-1L, bound - val);
    }
    return {scale_monic<OreKind::diff>(m.coeffs()), bound};
}

DiffOperator homogenize(const DiffOperator& m, long residual_degree_bound) {
    if (residual_degree_bound < 0) return normalize(m);
    std::vector<GPoly> d(static_cast<std::size_t>(residual_degree_bound) + 2);
    d.back() = GPoly(1);
    return normalize(DiffOperator(std::move(d)) * m);
}

ShiftOperator partial_sum_annihilator(const ShiftOperator& rec) {
    if (rec.is_zero()) fail(ErrorKind::precondition, "partial_sum_annihilator of the zero operator");
    std::vector<GPoly> shifted;
    for (const auto& p : rec.coeffs()) shifted.push_back(p.taylor_shift(GaussianRational(1)));
    const ShiftOperator s_minus_one(std::vector<GPoly>{GPoly(-1), GPoly(1)});
    return normalize(ShiftOperator(std::move(shifted)) * s_minus_one);
}

ShiftOperator geometric_twist(const ShiftOperator& rec, const GaussianRational& zeta) {
    if (zeta.is_zero()) fail(ErrorKind::precondition, "geometric_twist by zero");
    if (rec.is_zero()) fail(ErrorKind::precondition, "geometric_twist of the zero operator");
    std::vector<GPoly> c;
    const GaussianRational inv = zeta.inverse();
    GaussianRational scale(1);
    for (const auto& p : rec.coeffs()) {
        c.push_back(p * scale);
        scale *= inv;
    }
    return normalize(ShiftOperator(std::move(c)));
}

std::vector<RootDisk> singularities(const DiffOperator& op, mpfr_prec_t prec) {
    return complex_roots(op.lc(), prec);
}

DiffOperator shift_point(const DiffOperator& op, const GaussianRational& beta) {
    std::vector<GPoly> c;
    for (const auto& p : op.coeffs()) c.push_back(p.taylor_shift(beta));
    return DiffOperator(std::move(c));
}

// --- sequences ---------------------------------------------------------------

bool SequenceWindow::all_exact() const {
    return std::all_of(values.begin(), values.end(), [](const NumberValue& v) { return is_exact(v); });
}

std::vector<GaussianRational> SequenceWindow::exact_values() const {
    std::vector<GaussianRational> out;
    for (const auto& v : values) {
        if (!is_exact(v)) fail(ErrorKind::precondition, "sequence window holds enclosures");
        out.push_back(std::get<GaussianRational>(v));
    }
    return out;
}

namespace {

[[noreturn]] void lc_vanishes(long n) {
    std::ostringstream msg;
    msg << "leading coefficient of the recurrence vanishes at index " << n
        << "; supply initial terms past this index";
    fail(ErrorKind::precondition, msg.str());
}

}  // namespace

std::vector<GaussianRational> unroll_exact(const ShiftOperator& rec, std::vector<GaussianRational> a,
                                           std::size_t count, std::size_t offset) {
    const long r = rec.order();
    if (r < 0) fail(ErrorKind::precondition, "unroll with the zero operator");
    if (static_cast<long>(a.size()) < r) fail(ErrorKind::precondition, "unroll needs at least order-many initial terms");
    a.reserve(count);
    const auto& c = rec.coeffs();
    for (std::size_t m = a.size(); m < count; ++m) {
        const long n = static_cast<long>(offset + m) - r;
        const GaussianRational nn(n);
        GaussianRational lead = c[static_cast<std::size_t>(r)](nn);
        if (lead.is_zero()) lc_vanishes(n);
        GaussianRational acc;
        for (long j = 0; j < r; ++j) {
            const auto& p = c[static_cast<std::size_t>(j)];
            if (p.is_zero()) continue;
            const auto& term = a[m - static_cast<std::size_t>(r - j)];
            if (term.is_zero()) continue;
            acc += p(nn) * term;
        }
        a.push_back(acc.is_zero() ? acc : -acc / lead);
    }
    return a;
}

SequenceWindow unroll(const ShiftOperator& rec, const SequenceWindow& initial, std::size_t count, mpfr_prec_t prec) {
    if (initial.all_exact()) {
        SequenceWindow out{initial.offset, {}};
        for (auto& v : unroll_exact(rec, initial.exact_values(), count, initial.offset)) out.values.emplace_back(std::move(v));
        return out;
    }
    const long r = rec.order();
    if (r < 0) fail(ErrorKind::precondition, "unroll with the zero operator");
    if (static_cast<long>(initial.values.size()) < r)
        fail(ErrorKind::precondition, "unroll needs at least order-many initial terms");
    for (const auto& v : initial.values)
        if (const auto* e = std::get_if<Enclosure>(&v)) prec = std::max(prec, e->prec());
    std::vector<Enclosure> a;
    for (const auto& v : initial.values) a.push_back(to_enclosure(v, prec));
    const auto& c = rec.coeffs();
    for (std::size_t m = a.size(); m < count; ++m) {
        const long n = static_cast<long>(initial.offset + m) - r;
        const GaussianRational nn(n);
        GaussianRational lead = c[static_cast<std::size_t>(r)](nn);
        if (lead.is_zero()) lc_vanishes(n);
        Enclosure acc(prec);
        for (long j = 0; j < r; ++j) {
            const auto& p = c[static_cast<std::size_t>(j)];
            if (p.is_zero()) continue;
            acc = acc + Enclosure::exact(p(nn), prec) * a[m - static_cast<std::size_t>(r - j)];
        }
        a.push_back(-(acc * Enclosure::exact(lead.inverse(), prec)));
    }
    SequenceWindow out{initial.offset, {}};
    for (auto& e : a) out.values.emplace_back(std::move(e));
    return out;
}

std::vector<GaussianRational> apply_to_sequence(const ShiftOperator& rec, const std::vector<GaussianRational>& a,
                                                std::size_t offset) {
    const long r = rec.order();
    std::vector<GaussianRational> out;
    for (std::size_t t = 0; t + static_cast<std::size_t>(r) < a.size(); ++t) {
        const GaussianRational nn(static_cast<long>(offset + t));
        GaussianRational acc;
        for (long j = 0; j <= r; ++j) {
            const auto& p = rec.coeffs()[static_cast<std::size_t>(j)];
            if (!p.is_zero()) acc += p(nn) * a[t + static_cast<std::size_t>(j)];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<GaussianRational> apply_to_series(const DiffOperator& op, const std::vector<GaussianRational>& f) {
    const long r = op.order();
    const long len = static_cast<long>(f.size()) - r;
    std::vector<GaussianRational> out(static_cast<std::size_t>(std::max(0L, len)));
    for (long j = 0; j <= r; ++j) {
        const auto& p = op.coeffs()[static_cast<std::size_t>(j)];
        for (std::size_t a = 0; a < p.coeffs().size(); ++a) {
            if (p.coeffs()[a].is_zero()) continue;
            for (long m = static_cast<long>(a); m < len; ++m) {
                // [z^m] z^a D^j f = (m - a + j)^(falling j) f_{m - a + j}
                const long idx = m - static_cast<long>(a) + j;
                BigInteger ff(1);
                for (long t = 0; t < j; ++t) ff *= (idx - t);
                out[static_cast<std::size_t>(m)] += p.coeffs()[a] * GaussianRational(BigRational(ff)) * f[static_cast<std::size_t>(idx)];
            }
        }
    }
    return out;
}

bool all_zero(const std::vector<GaussianRational>& v) {
    return std::all_of(v.begin(), v.end(), [](const GaussianRational& x) { return x.is_zero(); });
}

#define DFINUM_INSTANTIATE(K)                                                                               \
    template class OreOperator<K>;                                                                          \
    template OreOperator<K> op_mul(const OreOperator<K>&, const OreOperator<K>&);                           \
    template OreOperator<K> normalize(const OreOperator<K>&);                                               \
    template OreOperator<K> lclm(const OreOperator<K>&, const OreOperator<K>&);                             \
    template OreOperator<K> conjugate_op(const OreOperator<K>&);                                            \
    template OreOperator<K> realify(const OreOperator<K>&);                                                 \
    template OreOperator<K> annihilator_sum(const OreOperator<K>&, const OreOperator<K>&);                  \
    template OreOperator<K> annihilator_product(const OreOperator<K>&, const OreOperator<K>&);              \
    template OreOperator<K> operator_from_relation<K>(const std::vector<RationalFunction>&); \
    template bool right_divisible(const OreOperator<K>&, const OreOperator<K>&);

DFINUM_INSTANTIATE(OreKind::shift)
DFINUM_INSTANTIATE(OreKind::diff)

#undef DFINUM_INSTANTIATE

}  // namespace dfinum
