#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "sbfly/graph.hpp"
#include "sbfly/oracle.hpp"
#include "sbfly/tiled_engine.hpp"

namespace sbfly::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kExpectationMismatch = 3,
};

/// Entry point shared by the `bbc` binary and the CLI tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json to_json(const GraphStats& s);
nlohmann::json to_json(const tiled::ScheduleReport& r);
nlohmann::json to_json(const oracle::ButterflyClassCounts& c);

}  // namespace sbfly::cli
