#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "npx/errors.hpp"

namespace npx::cli {

/// Runs one npx command. `args` excludes the program name. Returns the exit status:
/// 0 success, 1 construction failure, 2 domain or usage error, 3 resource cap.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

/// Every verifier for psi_{n,p} in one machine-readable report. Failures are data;
/// a check that hits a resource cap is reported with status "cap".
nlohmann::json verify_all(int n, int p, int budget, Limits const& limits = {});

/// Caps from NPX_MAX_SET, NPX_MAX_DEPTH and NPX_MAX_WORD_LENGTH over the defaults.
Limits limits_from_environment();

}  // namespace npx::cli
