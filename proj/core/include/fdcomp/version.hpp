#pragma once

namespace fdcomp {

/// Library version, "major.minor.patch".
const char* version();

}  // namespace fdcomp
