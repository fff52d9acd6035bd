#pragma once

#include <string>
#include <vector>

namespace kocheck {

// Batch front end. Exit status: 0 all checks pass, 1 check failures,
// 2 usage/parse errors, 3 resource bounds exceeded.
int run_cli(const std::vector<std::string>& args);

}  // namespace kocheck
