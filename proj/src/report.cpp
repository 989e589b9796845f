#include "mixparseval/report.hpp"

#include <cmath>
#include <limits>

namespace mixparseval {

nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["method"] = r.method;
    j["value_re"] = r.value_re;
    j["value_im"] = r.value_im;
    if (std::isfinite(r.tail_bound)) {
        j["tail_bound"] = r.tail_bound;
    } else {
        j["tail_bound"] = nullptr;
    }
    j["n_used"] = r.n_used;
    if (r.oracle_value) j["oracle_value"] = *r.oracle_value;
    if (r.oracle_gap) j["oracle_gap"] = *r.oracle_gap;
    if (r.hypothesis_verdict) j["hypothesis_verdict"] = *r.hypothesis_verdict;
    j["timing_ms"] = r.timing_ms;
    return j;
}

Report report_from_json(const nlohmann::json& j) {
    Report r;
    r.method = j.at("method").get<std::string>();
    r.value_re = j.at("value_re").get<double>();
    r.value_im = j.at("value_im").get<double>();
    const auto& tail = j.at("tail_bound");
    r.tail_bound = tail.is_null() ? std::numeric_limits<double>::infinity() : tail.get<double>();
    r.n_used = j.at("n_used").get<long>();
    if (j.contains("oracle_value")) r.oracle_value = j["oracle_value"].get<double>();
    if (j.contains("oracle_gap")) r.oracle_gap = j["oracle_gap"].get<double>();
    if (j.contains("hypothesis_verdict")) r.hypothesis_verdict = j["hypothesis_verdict"].get<std::string>();
    r.timing_ms = j.at("timing_ms").get<double>();
    return r;
}

}  // namespace mixparseval
