#include "dfinum/ansatz.hpp"

#include "dfinum/error.hpp"

namespace dfinum {

std::optional<RFVector> DependencyFinder::add(RFVector v) {
    if (v.size() != dim_) fail(ErrorKind::precondition, "dependency finder: dimension mismatch");
    const std::size_t k = count_++;
    RFVector comb(k + 1);
    comb[k] = RationalFunction(1);
    for (auto& row : rows_) row.combination.resize(k + 1);

    for (const auto& row : rows_) {
        const RationalFunction c = v[row.pivot];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!row.reduced[j].is_zero()) v[j] -= c * row.reduced[j];
        for (std::size_t j = 0; j <= k; ++j)
            if (!row.combination[j].is_zero()) comb[j] -= c * row.combination[j];
    }
    std::size_t pivot = dim_;
    for (std::size_t j = 0; j < dim_; ++j)
        if (!v[j].is_zero()) {
            pivot = j;
            break;
        }
    if (pivot == dim_) return comb;

    const RationalFunction inv = RationalFunction(1) / v[pivot];
    for (auto& x : v)
        if (!x.is_zero()) x *= inv;
    for (auto& x : comb)
        if (!x.is_zero()) x *= inv;
    rows_.push_back({std::move(v), pivot, std::move(comb)});
    return std::nullopt;
}

RFVector first_relation(RFVector start, const std::function<RFVector(const RFVector&)>& step) {
    const std::size_t dim = start.size();
    DependencyFinder finder(dim);
    RFVector current = std::move(start);
    for (std::size_t k = 0; k <= dim; ++k) {
        if (auto rel = finder.add(current)) return *rel;
        current = step(current);
    }
    fail(ErrorKind::precondition, "no linear relation found within the module dimension");
}

}  // namespace dfinum
