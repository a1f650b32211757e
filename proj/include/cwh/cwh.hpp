#pragma once

// Umbrella header for the numerical core. The batch harness (harness.hpp,
// io.hpp) is separate because it pulls in the TOML and JSON libraries.

#include "cwh/cases.hpp"
#include "cwh/classifier.hpp"
#include "cwh/error.hpp"
#include "cwh/grid_function.hpp"
#include "cwh/kernel_models.hpp"
#include "cwh/linalg.hpp"
#include "cwh/nystrom.hpp"
#include "cwh/parallel.hpp"
#include "cwh/special_operators.hpp"
#include "cwh/symbol_engine.hpp"
