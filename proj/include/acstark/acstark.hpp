#pragma once

#include "acstark/constants.hpp"
#include "acstark/errors.hpp"
#include "acstark/hydrogenic.hpp"
#include "acstark/bspline.hpp"
#include "acstark/radial_basis.hpp"
#include "acstark/resolvent.hpp"
#include "acstark/stark.hpp"
#include "acstark/quantized.hpp"
#include "acstark/tdse.hpp"
#include "acstark/version.hpp"
