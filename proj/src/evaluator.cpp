#include "dfinum/evaluator.hpp"

#include "dfinum/roots.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dfinum {

namespace {

constexpr std::size_t kBlock = 8;
constexpr double kTheta = 7.0 / 8.0;
constexpr double kInflation = 4.0;
constexpr long kGuardBits = 32;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Exact Taylor coefficients at the base of the fundamental solutions with
/// f_i^(m)(base)/m! = delta_{im} for m < order.
class LocalExpansion {
public:
    LocalExpansion(const DiffOperator& op, const GaussianRational& base) {
        const DiffOperator local = shift_point(op, base);
        r_ = static_cast<std::size_t>(local.order());
        kmin_ = diffop_to_rec_min_shift(local);
        // Reindex so that the equation at m >= 0 is [z^m] of L f and involves a_{m+kmin+s}.
        std::vector<GPoly> c;
        const ShiftOperator rec = diffop_to_rec(local);
        for (const auto& p : rec.coeffs()) c.push_back(p.taylor_shift(GaussianRational(kmin_)));
        rec_ = ShiftOperator(std::move(c));
        const std::size_t s = static_cast<std::size_t>(rec_.order());
        for (std::size_t i = 0; i < r_; ++i) {
            std::vector<GaussianRational> b;
            for (std::size_t j = 0; j < s; ++j) {
                const long m = kmin_ + static_cast<long>(j);
                b.emplace_back(m == static_cast<long>(i) ? 1 : 0);
            }
            cols_.push_back(std::move(b));
        }
    }

    std::size_t order() const { return r_; }
    std::size_t recurrence_order() const { return static_cast<std::size_t>(rec_.order()); }

    void ensure(std::size_t n) {
        const long need = static_cast<long>(n) - kmin_;
        if (need <= 0) return;
        for (auto& col : cols_)
            if (col.size() < static_cast<std::size_t>(need))
                col = unroll_exact(rec_, std::move(col), static_cast<std::size_t>(need));
    }

    /// Taylor coefficient m of fundamental solution i (call ensure(m + 1) first).
    const GaussianRational& coeff(std::size_t i, std::size_t m) const {
        static const GaussianRational zero, one(1);
        if (static_cast<long>(m) < kmin_) return m == i ? one : zero;
        return cols_[i][static_cast<std::size_t>(static_cast<long>(m) - kmin_)];
    }

private:
    std::size_t r_ = 0;
    long kmin_ = 0;
    ShiftOperator rec_;
    std::vector<std::vector<GaussianRational>> cols_;
};

double log2_sum(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log2(std::exp2(a - m) + std::exp2(b - m));
}

double radius_from_log2(double l) {
    if (l == kNegInf) return 0.0;
    if (l < -1070) return std::numeric_limits<double>::denorm_min();
    if (l > 1000) return std::numeric_limits<double>::infinity();
    return rounding::up(std::ldexp(1.0, static_cast<int>(std::ceil(l))));
}

double log2_upper(const NumberValue& v) {
    if (is_exact(v)) {
        const auto& x = std::get<GaussianRational>(v);
        return x.is_zero() ? kNegInf : log2_abs(x) + 1e-9;
    }
    const double u = std::get<Enclosure>(v).abs_upper();
    return u > 0 ? std::log2(u) : kNegInf;
}

BigInteger falling(std::size_t n, std::size_t k) {
    BigInteger f(1);
    for (std::size_t t = 0; t < k; ++t) f *= static_cast<unsigned long>(n - t);
    return f;
}

struct LocalSums {
    std::vector<Enclosure> derivs;
    std::optional<std::vector<GaussianRational>> exact;
    std::size_t terms = 0;
    double ratio = 0.0;
};

/// f^(k)(base + h) for k = 0..kmax.
LocalSums sum_local(LocalExpansion& ex, const std::vector<NumberValue>& ics, const GaussianRational& h, long kmax,
                    const EvalOptions& opt) {
    const std::size_t r = ex.order(), K = static_cast<std::size_t>(kmax);
    const mpfr_prec_t wp = opt.prec + kGuardBits;
    LocalSums out;

    bool ics_exact = true;
    for (const auto& v : ics) ics_exact = ics_exact && is_exact(v);
    std::vector<NumberValue> u;  // Taylor coefficients f^(i)(base) / i!
    for (std::size_t i = 0; i < r; ++i) {
        const GaussianRational inv_fact(BigRational(1) / factorial(i));
        if (is_exact(ics[i]))
            u.emplace_back(std::get<GaussianRational>(ics[i]) * inv_fact);
        else
            u.emplace_back(std::get<Enclosure>(ics[i]) * Enclosure::exact(inv_fact, wp));
    }

    if (h.is_zero()) {
        ex.ensure(K + 1);
        std::vector<GaussianRational> exact_vals;
        for (std::size_t k = 0; k <= K; ++k) {
            const GaussianRational kf(factorial(k));
            Enclosure acc(wp);
            GaussianRational eacc;
            for (std::size_t i = 0; i < r; ++i) {
                const GaussianRational& c = ex.coeff(i, k);
                if (c.is_zero()) continue;
                if (ics_exact) eacc += std::get<GaussianRational>(u[i]) * c;
                else acc += to_enclosure(u[i], wp) * Enclosure::exact(c, wp);
            }
            if (ics_exact) {
                exact_vals.push_back(eacc * kf);
                out.derivs.push_back(Enclosure::exact(exact_vals.back(), opt.prec));
            } else {
                out.derivs.push_back((acc * Enclosure::exact(kf, wp)).with_prec(opt.prec));
            }
        }
        if (ics_exact) out.exact = std::move(exact_vals);
        return out;
    }

    std::vector<double> ulog;
    for (const auto& v : u) ulog.push_back(log2_upper(v));
    const double hlog = log2_abs(h);

    // sums[i][k] = sum_n c_i[n] n^(falling k) h^(n-k)
    std::vector<std::vector<Enclosure>> sums(r, std::vector<Enclosure>(K + 1, Enclosure(wp)));
    std::vector<GaussianRational> hpow{GaussianRational(1)};
    std::vector<double> block_prev(K + 1, kNegInf), block_cur(K + 1, kNegInf), tail(K + 1, kNegInf);
    std::size_t zero_run = 0;
    bool terminated = false;
    std::size_t n = 0;
    while (true) {
        if (n >= opt.budget)
            fail(ErrorKind::budget, "Taylor series did not reach the requested accuracy within " +
                                        std::to_string(opt.budget) + " terms");
        ex.ensure(n + kBlock);
        std::fill(block_cur.begin(), block_cur.end(), kNegInf);
        for (std::size_t t = 0; t < kBlock; ++t, ++n) {
            while (hpow.size() <= n) hpow.push_back(hpow.back() * h);
            double mag = kNegInf;
            bool all_zero = true;
            for (std::size_t i = 0; i < r; ++i) {
                const GaussianRational& c = ex.coeff(i, n);
                if (c.is_zero()) continue;
                all_zero = false;
                mag = log2_sum(mag, ulog[i] + log2_abs(c));
                for (std::size_t k = 0; k <= K && k <= n; ++k) {
                    GaussianRational term = c * hpow[n - k];
                    if (k > 0) term = term * GaussianRational(BigRational(falling(n, k)));
                    sums[i][k] += Enclosure::exact(term, wp);
                }
            }
            zero_run = all_zero ? zero_run + 1 : 0;
            if (mag == kNegInf) continue;
            for (std::size_t k = 0; k <= K && k <= n; ++k) {
                const double lk = mag + (k > 0 ? std::log2(falling(n, k).get_d()) : 0.0) +
                                  static_cast<double>(n - k) * hlog;
                block_cur[k] = std::max(block_cur[k], lk);
            }
        }
        if (zero_run >= ex.recurrence_order() && zero_run >= 1 && n > r) {
            terminated = true;
            break;
        }
        bool done = n >= 2 * kBlock;
        double worst_ratio = 0.0;
        for (std::size_t k = 0; k <= K && done; ++k) {
            if (block_cur[k] == kNegInf || block_prev[k] == kNegInf) {
                done = false;
                break;
            }
            const double lrho = (block_cur[k] - block_prev[k]) / static_cast<double>(kBlock);
            if (!(lrho <= std::log2(kTheta))) {
                done = false;
                break;
            }
            worst_ratio = std::max(worst_ratio, std::exp2(lrho));
            const double l8 = lrho * static_cast<double>(kBlock);
            tail[k] = std::log2(kInflation * kBlock) + block_cur[k] + l8 - std::log2(1.0 - std::exp2(l8));
            Enclosure val(wp);
            for (std::size_t i = 0; i < r; ++i) val += to_enclosure(u[i], wp) * sums[i][k];
            const double vmag = val.abs_upper();
            const double target = -static_cast<double>(opt.prec + 8) + std::max(vmag > 0 ? std::log2(vmag) : kNegInf, -32.0);
            if (tail[k] > target) done = false;
        }
        if (done) {
            out.ratio = worst_ratio;
            break;
        }
        block_prev = block_cur;
    }
    out.terms = n;

    if (terminated && ics_exact) {
        std::vector<GaussianRational> vals(K + 1);
        std::vector<GaussianRational> hps{GaussianRational(1)};
        for (std::size_t m = 1; m < n; ++m) hps.push_back(hps.back() * h);
        for (std::size_t k = 0; k <= K; ++k)
            for (std::size_t m = k; m < n; ++m) {
                GaussianRational c;
                for (std::size_t i = 0; i < r; ++i) {
                    const GaussianRational& ci = ex.coeff(i, m);
                    if (!ci.is_zero()) c += std::get<GaussianRational>(u[i]) * ci;
                }
                if (!c.is_zero()) vals[k] += c * GaussianRational(BigRational(falling(m, k))) * hps[m - k];
            }
        for (const auto& v : vals) out.derivs.push_back(Enclosure::exact(v, opt.prec));
        out.exact = std::move(vals);
        return out;
    }
    for (std::size_t k = 0; k <= K; ++k) {
        Enclosure val(wp);
        for (std::size_t i = 0; i < r; ++i) val += to_enclosure(u[i], wp) * sums[i][k];
        if (!terminated) val = val.widened(radius_from_log2(tail[k]));
        out.derivs.push_back(val.with_prec(opt.prec));
    }
    return out;
}

std::vector<RootDisk> operator_singularities(const DiffOperator& op) { return singularities(op, 96); }

std::string describe(const RootDisk& d) {
    std::ostringstream s;
    s << d.disk.debug_str(12);
    return s.str();
}

/// Distance lower bound scaled by the safety factor, as an exact rational (-1 for +inf).
BigRational safe_radius(double dist, double safety) {
    return BigRational(std::nextafter(dist * safety, 0.0));
}

bool within(const GaussianRational& h, double dist, double safety) {
    if (std::isinf(dist)) return true;
    const BigRational s = safe_radius(dist, safety);
    return h.norm() <= s * s;
}

void check_regular(const DiffOperator& op, const std::vector<RootDisk>& roots, const GaussianRational& x) {
    if (op.lc()(x).is_zero())
        fail(ErrorKind::singular_point, "point " + x.str() + " is a singular point: the leading coefficient vanishes");
    for (const auto& d : roots)
        if (d.disk.contains(x))
            fail(ErrorKind::singular_point,
                 "point " + x.str() + " lies in the singularity enclosure " + describe(d));
}

double abs_approx(const GaussianRational& x) { return std::sqrt(x.norm().get_d()); }

/// Rounds both coordinates to multiples of 2^e.
GaussianRational round_to_grid(const GaussianRational& x, long e) {
    auto round = [e](const BigRational& v) {
        BigRational scaled = v;
        if (e >= 0) scaled /= BigRational(BigInteger(1) << static_cast<unsigned long>(e));
        else scaled *= BigRational(BigInteger(1) << static_cast<unsigned long>(-e));
        BigInteger n;
        BigRational shifted = scaled + BigRational(1, 2);
        mpz_fdiv_q(n.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
        BigRational out(n);
        if (e >= 0) out *= BigRational(BigInteger(1) << static_cast<unsigned long>(e));
        else out /= BigRational(BigInteger(1) << static_cast<unsigned long>(-e));
        return out;
    };
    return {round(x.re()), round(x.im())};
}

/// Distance from point c to the segment [a, b], in doubles.
double segment_distance(const GaussianRational& a, const GaussianRational& b, const GaussianRational& c) {
    const double ax = a.re().get_d(), ay = a.im().get_d(), bx = b.re().get_d(), by = b.im().get_d();
    const double cx = c.re().get_d(), cy = c.im().get_d();
    const double dx = bx - ax, dy = by - ay, len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((cx - ax) * dx + (cy - ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(ax + t * dx - cx, ay + t * dy - cy);
}

/// Subdivides [a, b] greedily: each step is at most safety * (certified distance).
void subdivide(const std::vector<RootDisk>& roots, const GaussianRational& a, const GaussianRational& b,
               const EvalOptions& opt, std::vector<GaussianRational>& out) {
    constexpr std::size_t kMaxSteps = 100000;
    GaussianRational cur = a;
    for (std::size_t steps = 0; cur != b; ++steps) {
        if (steps > kMaxSteps) fail(ErrorKind::no_path, "path subdivision exceeded its step budget");
        const double r = distance_lower_bound(roots, cur);
        const GaussianRational rest = b - cur;
        if (within(rest, r, opt.safety)) {
            cur = b;
        } else {
            if (!(r > 0)) fail(ErrorKind::no_path, "path point " + cur.str() + " touches a singularity enclosure");
            const double len = abs_approx(rest);
            const double step = opt.safety * r * (14.0 / 15.0);
            const long e = static_cast<long>(std::floor(std::log2(r / 64.0)));
            GaussianRational next = round_to_grid(cur + rest * GaussianRational(BigRational(step / len)), e);
            if (next == cur || !within(next - cur, r, opt.safety))
                next = cur + rest * GaussianRational(BigRational(0.5 * r * opt.safety / len));
            cur = next;
        }
        out.push_back(cur);
    }
}

/// Legs from a to b: straight when no singularity is near, otherwise a detour through a
/// perpendicular offset of half the leg length on the hinted side.
void route(const std::vector<RootDisk>& roots, const GaussianRational& a, const GaussianRational& b,
           PathHint hint, int depth, std::vector<GaussianRational>& legs) {
    const double len = abs_approx(b - a);
    std::vector<const RootDisk*> blocking;
    for (const auto& d : roots)
        if (segment_distance(a, b, d.disk.mid()) - d.disk.rad() < len / 8) blocking.push_back(&d);
    if (blocking.empty() || len == 0) {
        legs.push_back(b);
        return;
    }
    if (depth > 40) {
        std::string msg = "no path found around the singularity enclosures";
        for (const auto* d : blocking) msg += " " + describe(*d);
        fail(ErrorKind::no_path, msg);
    }
    const GaussianRational half(BigRational(1, 2));
    const GaussianRational offset = (b - a) * GaussianRational(0, 1) * half;  // |offset| = len / 2
    const bool upper = hint == PathHint::upper;
    const int sign_im = sgn(offset.im());
    const bool flip = sign_im == 0 ? false : ((sign_im > 0) != upper);
    const GaussianRational m = (a + b) * half + (flip ? -offset : offset);
    route(roots, a, m, hint, depth + 1, legs);
    route(roots, m, b, hint, depth + 1, legs);
}

}  // namespace

DFiniteInstance::DFiniteInstance(DiffOperator op, GaussianRational base, std::vector<NumberValue> ics)
    : op_(std::move(op)), base_(std::move(base)), ics_(std::move(ics)) {
    if (op_.is_zero()) fail(ErrorKind::precondition, "instance operator is zero");
    if (op_.lc()(base_).is_zero())
        fail(ErrorKind::singular_point,
             "base point " + base_.str() + " is a singular point of the operator (leading coefficient vanishes)");
    if (static_cast<long>(ics_.size()) != op_.order())
        fail(ErrorKind::precondition, "expected " + std::to_string(op_.order()) + " initial conditions, got " +
                                          std::to_string(ics_.size()));
}

bool DFiniteInstance::exact() const {
    return std::all_of(ics_.begin(), ics_.end(), [](const NumberValue& v) { return is_exact(v); });
}

std::vector<NumberValue> local_taylor(const DFiniteInstance& inst, std::size_t n, mpfr_prec_t prec) {
    LocalExpansion ex(inst.op(), inst.base());
    ex.ensure(n);
    const std::size_t r = ex.order();
    std::vector<NumberValue> out;
    for (std::size_t m = 0; m < n; ++m) {
        if (inst.exact()) {
            GaussianRational c;
            for (std::size_t i = 0; i < r; ++i)
                c += std::get<GaussianRational>(inst.ics()[i]) * GaussianRational(BigRational(1) / factorial(i)) * ex.coeff(i, m);
            out.emplace_back(std::move(c));
        } else {
            Enclosure c(prec);
            for (std::size_t i = 0; i < r; ++i)
                c += to_enclosure(inst.ics()[i], prec) *
                     Enclosure::exact(GaussianRational(BigRational(1) / factorial(i)) * ex.coeff(i, m), prec);
            out.emplace_back(std::move(c));
        }
    }
    return out;
}

namespace {

LocalSums local_step(const DFiniteInstance& inst, const std::vector<RootDisk>& roots, const GaussianRational& target,
                     long kmax, const EvalOptions& opt, SegmentReport& report) {
    const GaussianRational h = target - inst.base();
    const double r = distance_lower_bound(roots, inst.base());
    report.from = inst.base();
    report.to = target;
    report.singular_distance = r;
    if (!within(h, r, opt.safety)) {
        std::ostringstream msg;
        msg << "target " << target.str() << " lies outside the safe disk of radius " << opt.safety << " * " << r
            << " around " << inst.base().str() << "; analytic continuation is required";
        fail(ErrorKind::no_path, msg.str());
    }
    LocalExpansion ex(inst.op(), inst.base());
    LocalSums sums = sum_local(ex, inst.ics(), h, kmax, opt);
    report.terms = sums.terms;
    report.ratio = sums.ratio;
    return sums;
}

}  // namespace

EvalResult evaluate_local(const DFiniteInstance& inst, const GaussianRational& zeta, long k, const EvalOptions& opt) {
    if (k < 0) fail(ErrorKind::precondition, "derivative order must be nonnegative");
    const auto roots = operator_singularities(inst.op());
    EvalResult res;
    res.path.waypoints = {inst.base(), zeta};
    SegmentReport report;
    LocalSums sums = local_step(inst, roots, zeta, k, opt, report);
    res.segments.push_back(report);
    res.value = sums.derivs[static_cast<std::size_t>(k)];
    if (sums.exact) {
        res.exact = (*sums.exact)[static_cast<std::size_t>(k)];
        res.rigor = "exact";
    }
    return res;
}

DFiniteInstance continue_to(const DFiniteInstance& inst, const GaussianRational& beta, const EvalOptions& opt,
                            SegmentReport* report) {
    const auto roots = operator_singularities(inst.op());
    check_regular(inst.op(), roots, beta);
    SegmentReport local;
    LocalSums sums = local_step(inst, roots, beta, inst.op().order() - 1, opt, local);
    if (report) *report = local;
    std::vector<NumberValue> ics;
    for (std::size_t k = 0; k < sums.derivs.size(); ++k) {
        if (sums.exact) ics.emplace_back((*sums.exact)[k]);
        else ics.emplace_back(sums.derivs[k]);
    }
    return DFiniteInstance(inst.op(), beta, std::move(ics));
}

EvalPath auto_path(const DiffOperator& op, const GaussianRational& from, const GaussianRational& to,
                   const EvalOptions& opt) {
    const auto roots = operator_singularities(op);
    check_regular(op, roots, from);
    check_regular(op, roots, to);
    std::vector<GaussianRational> legs{from};
    if (from != to) route(roots, from, to, opt.hint, 0, legs);
    EvalPath path{{from}};
    for (std::size_t j = 1; j < legs.size(); ++j) subdivide(roots, legs[j - 1], legs[j], opt, path.waypoints);
    return path;
}

EvalPath refine_path(const DiffOperator& op, const EvalPath& path, const EvalOptions& opt) {
    if (path.waypoints.empty()) fail(ErrorKind::no_path, "empty path");
    const auto roots = operator_singularities(op);
    for (const auto& w : path.waypoints) {
        if (op.lc()(w).is_zero()) fail(ErrorKind::no_path, "waypoint " + w.str() + " is a singular point");
        for (const auto& d : roots)
            if (d.disk.contains(w))
                fail(ErrorKind::no_path, "waypoint " + w.str() + " lies in the singularity enclosure " + describe(d));
    }
    EvalPath out{{path.waypoints.front()}};
    for (std::size_t j = 1; j < path.waypoints.size(); ++j) {
        const auto& a = path.waypoints[j - 1];
        const auto& b = path.waypoints[j];
        for (const auto& d : roots)
            if (segment_distance(a, b, d.disk.mid()) <= d.disk.rad())
                fail(ErrorKind::no_path, "path leg " + a.str() + " -> " + b.str() +
                                             " passes through the singularity enclosure " + describe(d));
        subdivide(roots, a, b, opt, out.waypoints);
    }
    return out;
}

EvalResult evaluate(const DFiniteInstance& inst, const GaussianRational& zeta, long k, const EvalOptions& opt,
                    const std::optional<EvalPath>& path) {
    if (k < 0) fail(ErrorKind::precondition, "derivative order must be nonnegative");
    const auto roots = operator_singularities(inst.op());
    check_regular(inst.op(), roots, zeta);
    EvalPath route_taken;
    if (path) {
        if (path->waypoints.empty() || path->waypoints.front() != inst.base() || path->waypoints.back() != zeta)
            fail(ErrorKind::no_path, "path must start at the instance base and end at the evaluation point");
        route_taken = refine_path(inst.op(), *path, opt);
    } else {
        route_taken = auto_path(inst.op(), inst.base(), zeta, opt);
    }

    EvalResult res;
    res.path = route_taken;
    DFiniteInstance cur = inst;
    const auto& w = route_taken.waypoints;
    for (std::size_t j = 1; j + 1 < w.size(); ++j) {
        SegmentReport report;
        cur = continue_to(cur, w[j], opt, &report);
        res.segments.push_back(report);
    }
    SegmentReport last;
    LocalSums sums = local_step(cur, roots, zeta, k, opt, last);
    res.segments.push_back(last);
    res.value = sums.derivs[static_cast<std::size_t>(k)];
    if (sums.exact) {
        res.exact = (*sums.exact)[static_cast<std::size_t>(k)];
        res.rigor = "exact";
    }
    return res;
}

}  // namespace dfinum
