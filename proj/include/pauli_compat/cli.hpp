#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pauli_compat/channels.hpp"

namespace pauli_compat {

struct SharpestDirection {
  int axis;      // 1..3
  double value;  // s_max along that axis, = p_+[axis]
  bool tie;
};

/// Axis maximizing p_+[j] (ties broken toward the smallest index and flagged).
SharpestDirection sharpest_direction(const PauliChannel& ch);

/// Command-line front-end. Exit status: 0 success, 1 domain/usage errors,
/// 2 I/O errors. Errors appear as a single machine-parsable line on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pauli_compat
