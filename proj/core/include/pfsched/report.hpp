#pragma once

#include <chrono>
#include <nlohmann/json.hpp>
#include <string>

#include "pfsched/certify.hpp"
#include "pfsched/model.hpp"
#include "pfsched/pf.hpp"

namespace pfsched {

inline constexpr const char* kResultSchema = "pfsched-result/1";

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

nlohmann::json schedule_json(const Schedule&);
nlohmann::json timeline_json(const EventTimeline&);

// Round-trips exactly; beta rows serialize as affine segments, with an
// expanded per-cell table attached while the horizon is small.
nlohmann::json certificate_json(const DualCertificate&);
DualCertificate certificate_from_json(const nlohmann::json&);

nlohmann::json verdict_json(const CertificateVerdict&);

// Fresh result document: schema version, command, instance digest. Timing
// goes under doc["timing"], which result_digest strips.
nlohmann::json result_skeleton(const std::string& command, const Instance&);
std::string result_dump(const nlohmann::json&);
std::string result_digest(const nlohmann::json&);

}  // namespace pfsched
