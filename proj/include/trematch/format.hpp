#pragma once

// Text encodings of zones.
//
// human: `0 <= t < 3, 0 < t' <= 3, 0 < t'-t <= 3`; a variable pinned by
//        equal non-strict limits prints as `t = 0`.
// csv:   header `bmin,bmin_strict,...,dmax,dmax_strict`, one row per zone,
//        strictness as 0/1. Unbounded limits print as `-inf` / `inf`.

#include <string>
#include <string_view>
#include <vector>

#include "trematch/zone.hpp"

namespace trematch {

enum class OutputFormat { Human, Csv };

std::string format_human(const Zone &z);

const std::string &csv_header();
std::string format_csv_row(const Zone &z);

/// Parses csv text (header plus rows) back into zones exactly as written,
/// without tightening. Throws std::runtime_error on malformed input.
std::vector<Zone> parse_zones_csv(std::string_view text);

} // namespace trematch
