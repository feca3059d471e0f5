#pragma once

#include <string>

namespace thiim {

// Markdown tables of the code-balance and cache-block models over the
// standard parameter ranges, generated from perf_models so the docs can
// never drift from the code.
std::string generate_model_tables(int nx = 480, double bandwidth_gbs = 50.0);

}  // namespace thiim
