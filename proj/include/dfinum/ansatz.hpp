#pragma once

#include "dfinum/rational_function.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace dfinum {

using RFVector = std::vector<RationalFunction>;

/// Finds the first linear dependency in a stream of vectors over Q(i)(x).
///
/// Vectors are fed one at a time; the finder keeps a reduced echelon basis together with
/// the combination of inputs producing each basis row. add() returns c_0..c_k with
/// c_k = 1 and sum c_j v_j = 0 as soon as v_k depends on its predecessors.
class DependencyFinder {
public:
    explicit DependencyFinder(std::size_t dim) : dim_(dim) {}

    std::optional<RFVector> add(RFVector v);
    std::size_t count() const { return count_; }

private:
    struct Row {
        RFVector reduced;
        std::size_t pivot;
        RFVector combination;
    };

    std::size_t dim_;
    std::size_t count_ = 0;
    std::vector<Row> rows_;
};

/// Iterates v_{k+1} = step(v_k) from `start` until the vectors become dependent and
/// returns the relation. Terminates after at most dim + 1 vectors.
RFVector first_relation(RFVector start, const std::function<RFVector(const RFVector&)>& step);

}  // namespace dfinum
