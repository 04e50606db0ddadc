#pragma once

#include <json.hpp>

#include <string>
#include <utility>

namespace hgo {

using Json = nlohmann::ordered_json;

enum class Status { verified, counterexample, inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::verified:
      return "verified";
    case Status::counterexample:
      return "counterexample";
    default:
      return "inconclusive-at-bound";
  }
}

/// Outcome of one check. "verified" always means verified up to `bounds`.
struct VerificationReport {
  std::string check;
  Status status = Status::verified;
  Json witness = Json::object();
  Json bounds = Json::object();
  std::string provenance;

  bool verified() const { return status == Status::verified; }

  Json to_json() const {
    Json j;
    j["check"] = check;
    j["status"] = to_string(status);
    j["witness"] = witness;
    j["bounds"] = bounds;
    j["provenance"] = provenance;
    return j;
  }
};

inline VerificationReport make_report(std::string check, std::string provenance, Json bounds = Json::object()) {
  VerificationReport r;
  r.check = std::move(check);
  r.provenance = std::move(provenance);
  r.bounds = std::move(bounds);
  return r;
}

}  // namespace hgo
