#pragma once

#include <string>
#include <vector>

namespace padform {

// Command dispatch for the `padform` binary.  Exit codes:
//   0  success (solution verified / zero losses / audits pass)
//   1  usage or input error (including audit failures)
//   2  insolubility certified
//   3  unknown / no strategy / losses found
int run_cli(const std::vector<std::string>& args);

}  // namespace padform
