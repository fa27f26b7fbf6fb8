#ifndef AWQ_TOOLS_REPORT_HPP
#define AWQ_TOOLS_REPORT_HPP

#include "campaign.hpp"

#include <string>

namespace awq::cli {

// Pretty JSON with every float printed at 17 significant digits; non-finite floats become null.
std::string serialize(const json& doc);

std::string format_float(double x);

// Writes through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace awq::cli

#endif  // AWQ_TOOLS_REPORT_HPP
