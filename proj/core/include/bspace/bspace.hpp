#pragma once

// Umbrella header.
#include "bspace/boundary_function.hpp"
#include "bspace/boundary_map.hpp"
#include "bspace/error.hpp"
#include "bspace/gaussian.hpp"
#include "bspace/kernel.hpp"
#include "bspace/lambda4.hpp"
#include "bspace/linalg.hpp"
#include "bspace/measure.hpp"
#include "bspace/parallel.hpp"
#include "bspace/point.hpp"
#include "bspace/quadrature.hpp"
#include "bspace/reconstruct.hpp"
#include "bspace/section.hpp"
#include "bspace/special.hpp"
#include "bspace/trig_poly.hpp"
#include "bspace/types.hpp"

namespace bspace {
inline constexpr const char* kVersion = "0.1.0";
}  // namespace bspace
