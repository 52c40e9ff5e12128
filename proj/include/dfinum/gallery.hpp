#pragma once

#include "dfinum/enclosure.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dfinum {

/// Outcome of a pre-wired constant pipeline.
struct GalleryResult {
    std::string name;
    /// Operator, data and route used, in words.
    std::string pipeline;
    Enclosure value;
    std::optional<GaussianRational> exact;
    /// "exact" when `exact` is set, "heuristic-tail" otherwise.
    std::string rigor = "heuristic-tail";
    /// Taylor terms summed or sequence terms unrolled.
    std::size_t terms = 0;
    /// Pipeline-specific report lines, in output order.
    std::vector<std::pair<std::string, std::string>> details;
};

/// e, log2, pi4, zeta3, epi, sqrt2.
const std::vector<std::string>& gallery_names();

/// Runs the named pipeline for `digits` significant digits. `budget` = 0 selects the
/// pipeline default. Unknown names raise ErrorKind::parse.
GalleryResult run_gallery(const std::string& name, long digits, std::size_t budget = 0);

}  // namespace dfinum
