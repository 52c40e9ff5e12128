#include "dfinum/roots.hpp"

#include "dfinum/error.hpp"

#include <cmath>
#include <algorithm>
#include <complex>
#include <optional>
#include <limits>
#include <sstream>

namespace dfinum {

namespace {

using cd = std::complex<double>;

cd to_cd(const GaussianRational& g) { return {g.re().get_d(), g.im().get_d()}; }

// Aberth iteration in double precision; only a starting guess for the refinement.
std::vector<cd> aberth(const GPoly& q) {
    const long d = q.degree();
    std::vector<cd> c;
    for (const auto& v : q.coeffs()) c.push_back(to_cd(v));
    double bound = 0.0;
    for (long j = 0; j < d; ++j) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(j)] / c.back()));
    bound = 1.0 + bound;
    if (!std::isfinite(bound)) bound = 1e300;
    std::vector<cd> z(static_cast<std::size_t>(d));
    for (long k = 0; k < d; ++k) z[static_cast<std::size_t>(k)] = std::polar(0.5 * bound, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(d) + 0.4);
    auto eval = [&](cd x, cd& deriv) {
        cd v = 0.0, dv = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            dv = dv * x + v;
            v = v * x + *it;
        }
        deriv = dv;
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            cd dp;
            cd p = eval(z[k], dp);
            if (p == 0.0) continue;
            cd w = p / dp;
            cd s = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) s += 1.0 / (z[k] - z[j]);
            cd step = w / (1.0 - w * s);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
        }
        if (max_step < 1e-15) break;
    }
    return z;
}

Enclosure point(const Enclosure& e) { return Enclosure(e.re(), e.im(), 0.0); }

Enclosure eval_enclosure(const std::vector<Enclosure>& coeffs, const Enclosure& x) {
    Enclosure acc(x.prec());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Weierstrass (Durand-Kerner) refinement at the working precision.
void refine(const std::vector<Enclosure>& coeffs, std::vector<Enclosure>& z, mpfr_prec_t prec) {
    const double tol = std::ldexp(1.0, -static_cast<int>(prec) + 4);
    for (int iter = 0; iter < 200; ++iter) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            Enclosure den = Enclosure::exact(GaussianRational(1), prec);
            bool degenerate = false;
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j == k) continue;
                Enclosure diff = point(z[k] - z[j]);
                if (diff.re().is_zero() && diff.im().is_zero()) {
                    degenerate = true;
                    break;
                }
                den = point(den * diff);
            }
            if (degenerate) {
                // Nudge coincident approximations apart.
                z[k] = point(z[k] + Enclosure::exact(GaussianRational(BigRational(1, 1024), BigRational(1, 977)), prec));
                max_step = 1.0;
                continue;
            }
            Enclosure step = point(point(eval_enclosure(coeffs, z[k])) / den);
            z[k] = point(z[k] - step);
            double rel = step.abs_upper() / std::max(1.0, z[k].abs_lower());
            max_step = std::max(max_step, rel);
        }
        if (max_step < tol) break;
    }
}

std::optional<GaussianRational> snap_exact(const GPoly& q, const Enclosure& z) {
    static const BigInteger max_den(1000000);
    GaussianRational cand(best_rational(z.re().to_rational(), max_den), best_rational(z.im().to_rational(), max_den));
    if (q(cand).is_zero()) return cand;
    return std::nullopt;
}

struct FactorRoots {
    std::vector<Enclosure> disks;
};

FactorRoots isolate_factor(const GPoly& q, mpfr_prec_t prec) {
    const long d = q.degree();
    FactorRoots out;
    if (d == 1) {
        GaussianRational r = -q.coeff(0) / q.coeff(1);
        out.disks.push_back(Enclosure::exact(r, prec));
        return out;
    }
    const mpfr_prec_t wprec = prec + 20;
    std::vector<Enclosure> coeffs;
    for (const auto& c : q.coeffs()) coeffs.push_back(Enclosure::exact(c, wprec));
    std::vector<Enclosure> z;
    for (const cd& s : aberth(q)) {
        BigRational re, im;
        mpq_set_d(re.get_mpq_t(), std::isfinite(s.real()) ? s.real() : 0.0);
        mpq_set_d(im.get_mpq_t(), std::isfinite(s.imag()) ? s.imag() : 0.0);
        z.push_back(point(Enclosure::exact(GaussianRational(re, im), wprec)));
    }
    refine(coeffs, z, wprec);

    // Exact recognition, then the Weierstrass inclusion for the rest.
    std::vector<std::optional<GaussianRational>> exact(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        exact[k] = snap_exact(q, z[k]);
        if (exact[k]) z[k] = point(Enclosure::exact(*exact[k], wprec));
    }
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (exact[k]) {
            out.disks.push_back(Enclosure::exact(*exact[k], prec));
            continue;
        }
        Enclosure den = Enclosure::exact(q.lc(), wprec);
        bool ok = true;
        for (std::size_t j = 0; j < z.size(); ++j) {
            if (j == k) continue;
            Enclosure diff = z[k] - z[j];
            if (diff.contains_zero()) {
                ok = false;
                break;
            }
            den = den * diff;
        }
        double rad = std::numeric_limits<double>::infinity();
        if (ok && !den.contains_zero()) {
            Enclosure w = eval_enclosure(coeffs, z[k]) / den;
            rad = rounding::mul_up(static_cast<double>(d), w.abs_upper());
        }
        out.disks.push_back(Enclosure(z[k].re(), z[k].im(), rad).with_prec(prec));
    }
    return out;
}

double min_gap(const std::vector<RootDisk>& roots) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < roots.size(); ++a)
        for (std::size_t b = a + 1; b < roots.size(); ++b) {
            const auto& x = roots[a].disk;
            const auto& y = roots[b].disk;
            double dist = std::abs(cd(mpfr_get_d(x.re().get(), MPFR_RNDN), mpfr_get_d(x.im().get(), MPFR_RNDN)) -
                                   cd(mpfr_get_d(y.re().get(), MPFR_RNDN), mpfr_get_d(y.im().get(), MPFR_RNDN)));
            best = std::min(best, dist - x.rad() - y.rad());
        }
    return best;
}

}  // namespace

BigRational best_rational(const BigRational& x, const BigInteger& max_den) {
    // Convergents h/k of the continued fraction of x, stopping before k exceeds max_den.
    BigInteger h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    BigInteger num = x.get_num(), den = x.get_den();
    while (sgn(den) != 0) {
        BigInteger a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        BigInteger h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        BigInteger r = num - a * den;
        num = den;
        den = r;
    }
    if (sgn(k1) == 0) return BigRational(h0, k0);
    BigRational out(h1, k1);
    out.canonicalize();
    return out;
}

std::vector<RootDisk> complex_roots(const GPoly& p, mpfr_prec_t prec) {
    if (p.is_zero()) fail(ErrorKind::precondition, "complex_roots of the zero polynomial");
    if (p.degree() == 0) return {};
    const auto factors = squarefree_decomposition(p);
    std::vector<RootDisk> roots;
    mpfr_prec_t work = std::max<mpfr_prec_t>(prec, 64);
    for (int attempt = 0; attempt < 4; ++attempt, work *= 2) {
        roots.clear();
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (factors[k].degree() <= 0) continue;
            for (auto& disk : isolate_factor(factors[k], work).disks)
                roots.push_back({disk.with_prec(prec), static_cast<int>(k + 1)});
        }
        bool separated = true;
        for (std::size_t a = 0; a < roots.size() && separated; ++a) {
            if (!std::isfinite(roots[a].disk.rad())) separated = false;
            for (std::size_t b = a + 1; b < roots.size() && separated; ++b)
                if (roots[a].disk.overlaps(roots[b].disk)) separated = false;
        }
        if (separated) return roots;
    }
    std::ostringstream msg;
    msg << "root isolation failed to separate roots at " << work / 2 << " bits; best separation " << min_gap(roots);
    fail(ErrorKind::separation, msg.str());
}

double distance_lower_bound(const std::vector<RootDisk>& roots, const GaussianRational& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) {
        GaussianRational diff = x - r.disk.mid();
        double d = rounding::down(rounding::down(std::sqrt(diff.norm().get_d())));
        best = std::min(best, rounding::down(d - r.disk.rad()));
    }
    return std::max(best, 0.0);
}

std::vector<long> nonnegative_integer_roots(const GPoly& p) {
    if (p.is_zero()) fail(ErrorKind::precondition, "integer roots of the zero polynomial");
    std::vector<long> out;
    for (const auto& r : complex_roots(p, 64)) {
        const double re = mpfr_get_d(r.disk.re().get(), MPFR_RNDN);
        const double rad = r.disk.rad();
        if (r.disk.im().abs_lower() > rad + 0.5) continue;
        const double lo = std::max(0.0, std::ceil(re - rad - 1e-9));
        const double hi = std::floor(re + rad + 1e-9);
        if (hi - lo > 1e6) fail(ErrorKind::precondition, "integer root search range too wide");
        for (double k = lo; k <= hi; k += 1.0) {
            long n = static_cast<long>(k);
            if (p(GaussianRational(n)).is_zero()) out.push_back(n);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace dfinum
