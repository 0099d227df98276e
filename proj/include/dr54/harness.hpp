#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dr54/decorations.hpp"
#include "dr54/digest.hpp"

namespace dr54 {

inline constexpr std::string_view kToolVersion = "dr54 0.1.0";

// Initial-state selector for dynamics runs.
struct InitialStateSpec {
  std::string kind;   // vacuum | soliton-product | orbit-fourier |
                      // partial-overlap | outside | custom-bits
  int m = 0;          // orbit-fourier Fourier index
  double w = 0.5;     // partial-overlap weight
  std::string orbit;  // occupation string; defaults depend on kind
  std::string bits;   // site-0-first bit string for custom/outside override

  std::string label() const;
};

struct RunConfig {
  std::string experiment;
  int n_sites = 10;
  int l_min = 0;  // count/orbits; 0 means "use n_sites/2"
  int l_max = 0;
  int t_max = 60;
  int bins = 32;
  int cut = -1;  // entropy cut; -1 means N/2
  std::string out_dir = "out";
  DecorationSpec decoration;
  std::vector<InitialStateSpec> initial_states;
  std::string reference_orbit;  // tracking targets for outside/custom states
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// CLI/env overrides: --seed, --out, then DR54_OUT.
void apply_overrides(RunConfig& config, std::optional<std::uint64_t> seed,
                     std::optional<std::string> out_dir);

// Validates the config, runs the experiment, writes artifacts and a
// manifest under out_dir. Returns a process exit status; contract
// violations are reported on stderr with a nonzero status.
int run(const RunConfig& config);

}  // namespace dr54
