#pragma once

#include <string>

namespace mobius {

/// Decimal with 12 significant digits, locale-independent.
std::string fmt12(double value);

} // namespace mobius
