#pragma once

#include <complex>

namespace decosim {

using Complex = std::complex<double>;

} // namespace decosim
