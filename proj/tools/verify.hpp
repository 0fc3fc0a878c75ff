#pragma once

#include "gielab/gie.hpp"

#include <string>
#include <vector>

namespace gielab::tools {

struct SuiteReport {
  std::string name;
  bool passed = true;
  int instances = 0;
  double max_residual = 0;
  double threshold = 0;
  std::string note;
};

/// Suite names: core, channel, purification, separable, monotonic.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const GieConfig& cfg);

}  // namespace gielab::tools
