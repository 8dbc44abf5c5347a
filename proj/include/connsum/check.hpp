#pragma once

#include <string>

namespace connsum {

/// One named yes/no condition of a verification report.
struct NamedCheck {
  std::string name;
  bool holds = false;
};

}  // namespace connsum
