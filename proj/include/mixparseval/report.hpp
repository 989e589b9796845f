#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace mixparseval {

/// Structured result emitted by the CLI. The JSON form has exactly the keys
/// method, value_re, value_im, tail_bound, n_used, oracle_value, oracle_gap,
/// hypothesis_verdict and timing_ms; optional ones are omitted when absent.
/// An infinite tail_bound is written as null.
struct Report {
    std::string method;
    double value_re = 0.0;
    double value_im = 0.0;
    double tail_bound = 0.0;
    long n_used = 0;
    std::optional<double> oracle_value;
    std::optional<double> oracle_gap;
    std::optional<std::string> hypothesis_verdict;
    double timing_ms = 0.0;

    bool operator==(const Report&) const = default;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

}  // namespace mixparseval
