#include "thiim/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace thiim {

std::string report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "run-report/1";
  j["engine"] = r.engine;
  j["nx"] = r.dims.nx;
  j["ny"] = r.dims.ny;
  j["nz"] = r.dims.nz;
  j["steps"] = r.steps;
  j["steps_executed"] = r.steps_executed;
  j["threads"] = r.threads;
  j["dw"] = r.dw;
  j["bz"] = r.bz;
  j["tgz"] = r.shape.tgz;
  j["tgx"] = r.shape.tgx;
  j["tgc"] = r.shape.tgc;
  j["seconds"] = r.seconds;
  if (r.mlups)
    j["mlups"] = *r.mlups;
  else
    j["mlups"] = nullptr;
  j["balance_model"] = r.balance_model;
  j["cache_model_bytes"] = r.cache_model_bytes;
  if (r.predicted_mlups)
    j["predicted_mlups"] = *r.predicted_mlups;
  else
    j["predicted_mlups"] = nullptr;
  j["verification"] = r.verification;
  return j.dump();
}

std::string report_csv_header() {
  return "engine,grid,threads,dw,bz,tgz,tgx,tgc,mlups,balance_model,"
         "cache_model_bytes,predicted_mlups";
}

std::string report_to_csv(const RunReport& r) {
  std::ostringstream os;
  os << r.engine << ',' << r.dims.nx << 'x' << r.dims.ny << 'x' << r.dims.nz << ','
     << r.threads << ',' << r.dw << ',' << r.bz << ',' << r.shape.tgz << ','
     << r.shape.tgx << ',' << r.shape.tgc << ',';
  if (r.mlups) os << *r.mlups;
  os << ',' << r.balance_model << ',' << r.cache_model_bytes << ',';
  if (r.predicted_mlups) os << *r.predicted_mlups;
  return os.str();
}

void emit_reports(const std::vector<RunReport>& reports, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path jsonl = fs::path(dir) / "reports.jsonl";
  const fs::path csv = fs::path(dir) / "reports.csv";
  std::ofstream js(jsonl, std::ios::app);
  if (!js) throw ConfigError("cannot write " + jsonl.string());
  for (const auto& r : reports) js << report_to_json(r) << '\n';

  const bool fresh = !fs::exists(csv) || fs::file_size(csv, ec) == 0;
  std::ofstream cs(csv, std::ios::app);
  if (!cs) throw ConfigError("cannot write " + csv.string());
  if (fresh) cs << report_csv_header() << '\n';
  for (const auto& r : reports) cs << report_to_csv(r) << '\n';
}

}  // namespace thiim
