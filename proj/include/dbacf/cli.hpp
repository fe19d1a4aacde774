#pragma once

#include <string>
#include <vector>

namespace dbacf::cli {

enum ExitCode : int { kOk = 0, kIoError = 2, kDomainError = 3 };

/// Entry point of the `dbacf` tool. Results go to --output or stdout,
/// diagnostics to stderr as a single "dbacf: <CODE>: <message>" line.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace dbacf::cli
