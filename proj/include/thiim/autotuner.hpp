#pragma once

#include <optional>

#include "thiim/coefficients.hpp"
#include "thiim/mwd.hpp"
#include "thiim/perf_models.hpp"

namespace thiim {

struct Candidate {
  int dw = 0;
  int bz = 0;
  ThreadGroupShape shape;
  int num_groups = 1;
  double balance = 0.0;               // diamond code balance for dw
  std::uint64_t aggregate_cache = 0;  // tile bytes x concurrent groups
};

struct TrialResult {
  Candidate candidate;
  double mlups = 0.0;
  double seconds = 0.0;
  int steps = 0;
  bool ok = false;
  std::string note;
};

struct TuneResult {
  std::optional<Candidate> best;
  std::vector<TrialResult> table;
  bool fell_back_to_spatial = false;
  std::string winner_verification;
};

// All (dw, bz, shape) tuples whose aggregate cache demand fits the usable
// cache: dw in {4, 8, ..., min(ny, 32)} dividing ny, bz in 1..16, shapes
// with group size dividing total_threads and tgc in {1,2,3,6}. Sorted by
// model code balance ascending (then larger dw, smaller bz, larger group).
std::vector<Candidate> enumerate_candidates(const GridDims& dims, int total_threads,
                                            const MachineProfile& profile);

// Times every candidate on a fresh benchmark state (first run discarded as
// warm-up, then repeats until at least min_seconds accumulate), picks the
// highest MLUP/s with ties inside 2% broken by larger dw then larger group
// size, and verifies the winner bitwise against the naive engine on a small
// grid before reporting it.
TuneResult tune(const GridDims& dims, const SchemeParams& sp, int total_threads,
                const MachineProfile& profile,
                const std::vector<Candidate>& candidates, int trial_steps = 0,
                double min_seconds = 0.2);

TuneResult tune(const GridDims& dims, const SchemeParams& sp, int total_threads,
                const MachineProfile& profile, int trial_steps = 0,
                double min_seconds = 0.2);

std::string candidate_to_json(const Candidate& c);
std::string trial_table_csv(const std::vector<TrialResult>& table);

}  // namespace thiim
