#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace synth {

struct FixtureResult {
  std::size_t cases = 0;
  std::vector<std::string> failures;  // one line per failing case
};

// Runs every case of a metric fixture table (tests/data/metric_fixtures.json).
FixtureResult check_metric_fixtures(const std::filesystem::path& path);

}  // namespace synth
