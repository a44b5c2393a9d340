#pragma once

// Convenience umbrella: pulls in the whole library.

#include "kdvbbm/artifacts.hpp"
#include "kdvbbm/bands.hpp"
#include "kdvbbm/config.hpp"
#include "kdvbbm/dyadic.hpp"
#include "kdvbbm/energy.hpp"
#include "kdvbbm/ensemble.hpp"
#include "kdvbbm/errors.hpp"
#include "kdvbbm/estimates.hpp"
#include "kdvbbm/etdrk4.hpp"
#include "kdvbbm/evolution.hpp"
#include "kdvbbm/fft.hpp"
#include "kdvbbm/field.hpp"
#include "kdvbbm/grid.hpp"
#include "kdvbbm/multiplier.hpp"
#include "kdvbbm/nonlinearity.hpp"
#include "kdvbbm/norms.hpp"
#include "kdvbbm/params.hpp"
#include "kdvbbm/picard.hpp"
#include "kdvbbm/quadrature.hpp"
#include "kdvbbm/runner.hpp"
#include "kdvbbm/semigroup.hpp"
#include "kdvbbm/soliton.hpp"
#include "kdvbbm/split.hpp"
#include "kdvbbm/symbols.hpp"
#include "kdvbbm/window.hpp"
