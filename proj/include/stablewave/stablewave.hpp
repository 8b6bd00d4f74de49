#pragma once

#include "stablewave/error.hpp"
#include "stablewave/special.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/stable.hpp"
#include "stablewave/packet.hpp"
#include "stablewave/amplitude.hpp"
#include "stablewave/uncertainty.hpp"
#include "stablewave/pde.hpp"
