#include <doctest.h>

#include "thiim/model_tables.hpp"
#include "thiim/perf_models.hpp"

using namespace thiim;

TEST_CASE("generated tables carry the anchor values") {
  const std::string md = generate_model_tables(480, 50.0);
  CHECK(md.find("| naive | 1344 |") != std::string::npos);
  CHECK(md.find("| spatial | 1216 |") != std::string::npos);
  CHECK(md.find("| diamond, dw=4 | 428.00") != std::string::npos);
  CHECK(md.find("| diamond, dw=16 | 104.75") != std::string::npos);
  CHECK(md.find("14912") != std::string::npos);  // (dw=4, bz=4) per-x-line bytes
  CHECK(md.find("| spatial | 41.1 |") != std::string::npos);
  // Values come straight from the model functions.
  CHECK(md.find(std::to_string(cache_block_bytes(480, 8, 6))) != std::string::npos);
}
