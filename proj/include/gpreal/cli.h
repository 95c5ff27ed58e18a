#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gpreal/json_io.h"

namespace gpreal::cli {

/// Runs one command line (args[0] is the program name). Exit codes: 0 when
/// the command's predicate holds, 1 when it was computed and fails, 2 on
/// input or numerical errors.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct DemoCheck {
  std::string name;
  std::string status;  // pass, fail, expected_discrepancy
  std::string detail;
};

/// Regression run over the built-in example matrices.
std::vector<DemoCheck> RunDemo();

json_io::Json DemoToJson(const std::vector<DemoCheck>& checks);

}  // namespace gpreal::cli
