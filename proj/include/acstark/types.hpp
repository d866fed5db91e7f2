#pragma once

#include <complex>

namespace acstark {

using dcomplex = std::complex<double>;

} // namespace acstark
