// JSON request -> canonical JSON report, one function per CLI subcommand.
// The C API and the CLI both run through these.
#pragma once

#include <string>

namespace merodiff::workflows {

std::string solve_eigen(const std::string& request);
std::string residual(const std::string& request);
std::string nevanlinna(const std::string& request);
std::string share(const std::string& request);
std::string rational(const std::string& request);
std::string roots(const std::string& request);

}  // namespace merodiff::workflows
