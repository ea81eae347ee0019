#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cvi/core.hpp"
#include "cvi/harness.hpp"

namespace cvi {

/// "euclidean", "cosine", "minkowski" (p = 2) or "minkowski:p=<x>".
MetricSpec parse_metric(std::string_view text);

/// Comma-separated registry keys. Throws std::invalid_argument on an unknown key.
std::vector<IndexId> parse_index_list(std::string_view text);

/// Comma-separated non-negative integers.
std::vector<std::size_t> parse_size_list(std::string_view text);

/// "lo-hi" or "lo..hi", inclusive.
std::pair<std::size_t, std::size_t> parse_k_range(std::string_view text);

double parse_double(std::string_view text);
std::size_t parse_size(std::string_view text);

/**
 * Flat key=value config text. '#' starts a comment, blank lines are
 * ignored, keys are the long flag names without dashes ("k-star",
 * "dims", ...). A repeated key keeps the last value.
 */
std::map<std::string, std::string> parse_key_values(std::string_view text);

/// Applies one setting to an experiment config. Recognized keys: scheme,
/// k-star, dims, realizations, k-range, noise-fraction,
/// irrelevant-fraction, metric, indices, seed, threads. Setting k-star
/// without k-range resets the K range to {2, ..., k*+3}.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Applies a whole map, scheme and k-star first.
void apply_settings(ExperimentConfig& cfg, const std::map<std::string, std::string>& settings);

}  // namespace cvi
