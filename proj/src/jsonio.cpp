#include "rigged/sset.hpp"

namespace rigged {}
