#pragma once

#include <string>
#include <vector>

#include "realchrom/groups.hpp"

namespace realchrom {

// Named cross-check suites exposed through the CLI.  Each suite prints a
// deterministic report and counts failures that are actually unexpected
// (the diff-style suites are supposed to find differences).
struct SuiteResult {
    std::string report;
    long long unexpectedFailures = 0;
};

std::vector<std::string> suiteNames();

SuiteResult runSuite(const std::string& name, int n, long long K, long long L,
                     OutputFormat format);

}  // namespace realchrom
