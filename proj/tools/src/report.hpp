#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace beauville::cli {

enum class Status { verified, counterexample, unknown };

const char* to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::unknown;
  std::string detail;
  /// Present exactly when status is counterexample; a document that
  /// `verify-witness --file` replays.
  std::optional<Json> counterexample_data;
};

struct Report {
  std::string command;
  Json params = Json::object();
  std::uint64_t group_order = 0;
  std::vector<Check> checks;
  /// Command-specific payload, such as a found structure.
  Json result;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<std::int64_t> elapsed_ms;

  Check& add(std::string name, Status status, std::string detail);
  Check& add_counterexample(std::string name, std::string detail, Json data);
};

/// Settings shared by every subcommand.
struct Context {
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool timing = false;
};

Json to_json(const Report& r);

/// 1 if any counterexample, else 3 if any unknown, else 0.
int exit_code(const Report& r);

void write_summary(std::ostream& err, const Report& r);

}  // namespace beauville::cli
