#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tomokernel/states.hpp"

namespace fixtures {

struct NamedState {
  std::string name;
  tomokernel::DensityMatrix rho;
};

/// Vacuum, |1⟩, |2⟩, coherent(1+0.5i), thermal(0.5) and (|0⟩+|2⟩)/√2.
inline std::vector<NamedState> canonical_states(int dim = tomokernel::kDefaultDim) {
  using namespace tomokernel;
  const std::array<std::pair<int, Complex>, 2> cat{{{0, 1.0}, {2, 1.0}}};
  return {
      {"vacuum", make_number_state(0, dim)},
      {"number1", make_number_state(1, dim)},
      {"number2", make_number_state(2, dim)},
      {"coherent(1+0.5i)", make_coherent_state({1.0, 0.5}, dim)},
      {"thermal(0.5)", make_thermal_state(0.5, dim)},
      {"(|0>+|2>)/sqrt2", make_superposition(cat, dim)},
  };
}

}  // namespace fixtures
