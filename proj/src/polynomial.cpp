#include "dfinum/polynomial.hpp"

namespace dfinum {

std::vector<GPoly> squarefree_decomposition(const GPoly& p) {
    if (p.is_zero()) fail(ErrorKind::precondition, "square-free decomposition of zero");
    std::vector<GPoly> out;
    GPoly f = p.monic();
    if (f.degree() <= 0) return out;
    GPoly df = f.derivative();
    GPoly a = GPoly::gcd(f, df);
    GPoly b = f / a;
    GPoly c = df / a;
    GPoly d = c - b.derivative();
    while (b.degree() > 0) {
        GPoly ai = GPoly::gcd(b, d);
        b = b / ai;
        c = d / ai;
        d = c - b.derivative();
        out.push_back(ai.monic());
    }
    return out;
}

GPoly falling_factorial_shifted(long s, unsigned k) {
    GPoly r(1);
    for (unsigned t = 0; t < k; ++t) r *= GPoly(std::vector<GaussianRational>{GaussianRational(s - static_cast<long>(t)), GaussianRational(1)});
    return r;
}

}  // namespace dfinum
