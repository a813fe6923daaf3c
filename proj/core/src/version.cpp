#include "fdcomp/version.hpp"

namespace fdcomp {

const char* version() { return FDCOMP_VERSION_STRING; }

}  // namespace fdcomp
