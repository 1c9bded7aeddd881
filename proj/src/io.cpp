#include "mobius/io.hpp"

#include <cstdio>

namespace mobius {

std::string fmt12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

} // namespace mobius
