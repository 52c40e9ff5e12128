#pragma once

#include "dfinum/enclosure.hpp"
#include "dfinum/polynomial.hpp"
#include "dfinum/rational_function.hpp"
#include "dfinum/roots.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dfinum {

/// Which Ore algebra an operator lives in: F[n]<S_n> with S n = (n+1) S, or
/// F[z]<D_z> with D z = z D + 1.
enum class OreKind { shift, diff };

/// Linear operator sum_j coeffs[j](x) * d^j with polynomial coefficients on the left.
template <OreKind Kind>
class OreOperator {
public:
    static constexpr OreKind kind = Kind;

    OreOperator() = default;
    explicit OreOperator(std::vector<GPoly> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    OreOperator(const GPoly& p) : coeffs_{p} { trim(); }  // NOLINT(implicit)

    /// The generator d (S_n or D_z).
    static OreOperator generator() { return OreOperator(std::vector<GPoly>{GPoly(), GPoly(1)}); }

    long order() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<GPoly>& coeffs() const { return coeffs_; }
    GPoly coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : GPoly(); }
    const GPoly& lc() const {
        if (coeffs_.empty()) fail(ErrorKind::precondition, "leading coefficient of the zero operator");
        return coeffs_.back();
    }
    /// Largest coefficient degree in x.
    long degree() const {
        long d = -1;
        for (const auto& c : coeffs_) d = std::max(d, c.degree());
        return d;
    }

    OreOperator operator-() const {
        std::vector<GPoly> c = coeffs_;
        for (auto& p : c) p = -p;
        return OreOperator(std::move(c));
    }
    friend OreOperator operator+(const OreOperator& a, const OreOperator& b) {
        std::vector<GPoly> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coeff(j) + b.coeff(j);
        return OreOperator(std::move(c));
    }
    friend OreOperator operator-(const OreOperator& a, const OreOperator& b) { return a + (-b); }
    /// Left multiplication by a polynomial.
    friend OreOperator operator*(const GPoly& p, const OreOperator& a) {
        std::vector<GPoly> c = a.coeffs_;
        for (auto& q : c) q = p * q;
        return OreOperator(std::move(c));
    }
    /// Ore multiplication (composition of operators).
    friend OreOperator operator*(const OreOperator& a, const OreOperator& b) { return op_mul(a, b); }
    friend bool operator==(const OreOperator& a, const OreOperator& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const OreOperator& a, const OreOperator& b) { return !(a == b); }

    /// d * (this): applies the commutation rule to every coefficient.
    OreOperator left_generator_mul() const;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<GPoly> coeffs_;
};

using ShiftOperator = OreOperator<OreKind::shift>;
using DiffOperator = OreOperator<OreKind::diff>;

/// Contiguous terms a_offset, ..., a_{offset+len-1}.
struct SequenceWindow {
    std::size_t offset = 0;
    std::vector<NumberValue> values;

    bool all_exact() const;
    /// Exact values; throws if any entry is an enclosure.
    std::vector<GaussianRational> exact_values() const;
};

// --- arithmetic and closure -----------------------------------------------

template <OreKind K>
OreOperator<K> op_mul(const OreOperator<K>& a, const OreOperator<K>& b);

/// Canonical form: for differential operators the polynomial content is divided out;
/// for recurrences only content factors without nonnegative integer roots are removed
/// (dividing by the others would void the recurrence at those indices). Finally the
/// leading coefficient of the leading polynomial is made 1.
template <OreKind K>
OreOperator<K> normalize(const OreOperator<K>& op);

/// Least common left multiple via an incremental order ansatz over F(x).
template <OreKind K>
OreOperator<K> lclm(const OreOperator<K>& a, const OreOperator<K>& b);

template <OreKind K>
OreOperator<K> conjugate_op(const OreOperator<K>& op);

/// lclm(L, conj(L)); the result has real coefficients.
template <OreKind K>
OreOperator<K> realify(const OreOperator<K>& op);

/// Annihilator of f + g.
template <OreKind K>
OreOperator<K> annihilator_sum(const OreOperator<K>& a, const OreOperator<K>& b);

/// Annihilator of f * g (termwise product for sequences, function product for series).
template <OreKind K>
OreOperator<K> annihilator_product(const OreOperator<K>& a, const OreOperator<K>& b);

/// Normalized operator sum_k c_k d^k from a relation with rational-function coefficients
/// (denominators cleared).
template <OreKind K>
OreOperator<K> operator_from_relation(const std::vector<RationalFunction>& relation);

/// True when b right-divides a exactly over F(x), i.e. a = Q * b for some operator Q.
template <OreKind K>
bool right_divisible(const OreOperator<K>& a, const OreOperator<K>& b);

// --- conversions ------------------------------------------------------------

/// Recurrence satisfied by the Taylor coefficients of every power-series solution, valid
/// for all n >= 0 with a_n = 0 for n < 0.
ShiftOperator diffop_to_rec(const DiffOperator& op);

/// Offset bookkeeping of diffop_to_rec: the returned recurrence relates a_{n+s} for
/// s = 0..order, where the equation at n corresponds to index shift `min_shift`
/// (= min over terms z^a D^j of j - a). Needed to seed unrolling from negative indices.
long diffop_to_rec_min_shift(const DiffOperator& op);

struct RecToDiffResult {
    DiffOperator op;
    /// deg(op * f) <= residual_degree_bound; -1 means op * f = 0 exactly.
    long residual_degree_bound = -1;
};

/// Differential operator M with M * sum a_n z^n a polynomial of bounded degree.
RecToDiffResult rec_to_diffop(const ShiftOperator& rec);

/// D^(d+1) * M (normalized): turns an inhomogeneous relation into an annihilator.
DiffOperator homogenize(const DiffOperator& m, long residual_degree_bound);

/// Annihilator of s_n = sum_{k <= n} a_k: L(n+1) * (S - 1).
ShiftOperator partial_sum_annihilator(const ShiftOperator& rec);

/// Annihilator of a_n * zeta^n.
ShiftOperator geometric_twist(const ShiftOperator& rec, const GaussianRational& zeta);

/// Certified enclosures of the roots of lc(op).
std::vector<RootDisk> singularities(const DiffOperator& op, mpfr_prec_t prec);

/// Replaces z by z + beta in every coefficient.
DiffOperator shift_point(const DiffOperator& op, const GaussianRational& beta);

/// Extends `initial` to `count` terms with the recurrence. Exact when the window is
/// exact, enclosure arithmetic at `prec` bits otherwise. Throws when lc(rec) vanishes at
/// an index needed to advance.
SequenceWindow unroll(const ShiftOperator& rec, const SequenceWindow& initial, std::size_t count,
                      mpfr_prec_t prec = 128);

/// Exact unrolling of a recurrence with exact data.
std::vector<GaussianRational> unroll_exact(const ShiftOperator& rec, std::vector<GaussianRational> initial,
                                           std::size_t count, std::size_t offset = 0);

// --- application (residual checks) ------------------------------------------

/// (L a)_n for n = offset .. offset + len - order - 1.
std::vector<GaussianRational> apply_to_sequence(const ShiftOperator& rec, const std::vector<GaussianRational>& a,
                                                std::size_t offset = 0);

/// First len - order coefficients of L f, where f is known modulo z^len.
std::vector<GaussianRational> apply_to_series(const DiffOperator& op, const std::vector<GaussianRational>& f);

bool all_zero(const std::vector<GaussianRational>& v);

}  // namespace dfinum
