#pragma once

#include "dfinum/enclosure.hpp"
#include "dfinum/polynomial.hpp"

#include <vector>

namespace dfinum {

struct RootDisk {
    Enclosure disk;
    int multiplicity = 1;
};

/// Certified isolation of all complex roots of p.
///
/// Roots of each square-free factor are approximated simultaneously (Aberth in double
/// precision, then Weierstrass iteration at `prec` bits) and certified with the
/// Weierstrass inclusion: the disks |z - z_k| <= deg * |W_k| cover all roots and an
/// isolated disk holds exactly one. Roots that are small-height Gaussian rationals are
/// recognized and returned with an exact midpoint. Disks are pairwise disjoint.
///
/// A nonzero constant yields an empty list. Throws ErrorKind::separation when the
/// disks still overlap after raising the precision a few times.
std::vector<RootDisk> complex_roots(const GPoly& p, mpfr_prec_t prec);

/// Lower bound on min |x - root| over all disks (+inf when there are none).
double distance_lower_bound(const std::vector<RootDisk>& roots, const GaussianRational& x);

/// Best rational approximation with denominator at most max_den (continued fractions).
BigRational best_rational(const BigRational& x, const BigInteger& max_den);

}  // namespace dfinum
