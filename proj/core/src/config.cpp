#include "cvi/config.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "cvi/csv.hpp"
#include "cvi/indices.hpp"
#include "cvi/metrics.hpp"

namespace cvi {

double parse_double(std::string_view text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return v;
}

std::size_t parse_size(std::string_view text) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
    return v;
}

MetricSpec parse_metric(std::string_view text) {
    if (text == "euclidean") return MetricSpec::euclidean();
    if (text == "cosine") return MetricSpec::cosine();
    if (text == "minkowski") return MetricSpec::minkowski(2.0);
    constexpr std::string_view prefix = "minkowski:p=";
    if (text.starts_with(prefix)) return MetricSpec::minkowski(parse_double(text.substr(prefix.size())));
    throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
}

std::vector<IndexId> parse_index_list(std::string_view text) {
    std::vector<IndexId> out;
    for (const auto& key : split_list(text)) {
        if (key == "all") {
            for (const auto& info : index_registry()) out.push_back(info.id);
            continue;
        }
        auto id = find_index(key);
        if (!id) throw std::invalid_argument("unknown index '" + key + "'");
        out.push_back(*id);
    }
    return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(text)) out.push_back(parse_size(item));
    return out;
}

std::pair<std::size_t, std::size_t> parse_k_range(std::string_view text) {
    std::size_t sep_len = 2;
    auto pos = text.find("..");
    if (pos == std::string_view::npos) {
        pos = text.find('-');
        sep_len = 1;
    }
    if (pos == std::string_view::npos) throw std::invalid_argument("K range must look like lo-hi");
    return {parse_size(text.substr(0, pos)), parse_size(text.substr(pos + sep_len))};
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (split_list(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
        auto key = split_list(line.substr(0, eq), '\n');
        auto value = split_list(line.substr(eq + 1), '\n');
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        out[key[0]] = value.empty() ? std::string{} : value[0];
    }
    return out;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "scheme") {
        cfg.scheme.scheme = parse_scheme(value);
    } else if (key == "k-star") {
        cfg.scheme.k_star = parse_size(value);
        cfg.set_default_k_range();
    } else if (key == "dims") {
        cfg.dims = parse_size_list(value);
    } else if (key == "realizations") {
        cfg.realizations = parse_size(value);
    } else if (key == "k-range") {
        auto [lo, hi] = parse_k_range(value);
        cfg.k_min = lo;
        cfg.k_max = hi;
    } else if (key == "noise-fraction") {
        cfg.scheme.noise_fraction = parse_double(value);
    } else if (key == "irrelevant-fraction") {
        cfg.scheme.irrelevant_fraction = parse_double(value);
    } else if (key == "metric") {
        cfg.metrics.clear();
        for (const auto& m : split_list(value)) cfg.metrics.push_back(parse_metric(m));
    } else if (key == "indices") {
        cfg.indices = parse_index_list(value);
    } else if (key == "seed") {
        cfg.master_seed = parse_size(value);
    } else if (key == "threads") {
        cfg.threads = parse_size(value);
    } else {
        throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
    }
}

void apply_settings(ExperimentConfig& cfg, const std::map<std::string, std::string>& settings) {
    for (std::string_view first : {"scheme", "k-star"})
        if (auto it = settings.find(std::string(first)); it != settings.end()) apply_setting(cfg, it->first, it->second);
    for (const auto& [key, value] : settings)
        if (key != "scheme" && key != "k-star") apply_setting(cfg, key, value);
}

}  // namespace cvi
