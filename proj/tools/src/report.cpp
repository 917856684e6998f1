#include "report.hpp"

#include <ostream>

#include "beauville/cli/cli.hpp"

namespace beauville::cli {

const char* to_string(Status s) {
  switch (s) {
    case Status::verified:
      return "verified";
    case Status::counterexample:
      return "counterexample";
    case Status::unknown:
      return "unknown";
  }
  return "unknown";
}

Check& Report::add(std::string name, Status status, std::string detail) {
  checks.push_back({std::move(name), status, std::move(detail), std::nullopt});
  return checks.back();
}

Check& Report::add_counterexample(std::string name, std::string detail, Json data) {
  checks.push_back({std::move(name), Status::counterexample, std::move(detail), std::move(data)});
  return checks.back();
}

Json to_json(const Report& r) {
  Json j;
  j["schema"] = 1;
  j["command"] = r.command;
  j["params"] = r.params;
  j["group_order"] = r.group_order;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
    if (c.counterexample_data) cj["counterexample_data"] = *c.counterexample_data;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  if (!r.result.is_null()) j["result"] = r.result;
  j["seed"] = r.seed;
  j["workers"] = r.workers;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j;
}

int exit_code(const Report& r) {
  bool unknown = false;
  for (const auto& c : r.checks) {
    if (c.status == Status::counterexample) return kCounterexample;
    if (c.status == Status::unknown) unknown = true;
  }
  return unknown ? kUnknown : kVerified;
}

void write_summary(std::ostream& err, const Report& r) {
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& c : r.checks) {
    ++counts[static_cast<int>(c.status)];
    err << '[' << to_string(c.status) << "] " << c.name << ": " << c.detail << '\n';
  }
  err << r.command << ": " << counts[0] << " verified, " << counts[1] << " counterexample, " << counts[2]
      << " unknown";
  if (r.elapsed_ms) err << " (" << *r.elapsed_ms << " ms)";
  err << '\n';
}

}  // namespace beauville::cli
