#include "cgame/common.hpp"

#include <cstdio>

namespace cgame {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace cgame
