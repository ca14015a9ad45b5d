#pragma once

#include "amm/analysis.hpp"
#include "amm/attacks.hpp"
#include "amm/curves.hpp"
#include "amm/engine.hpp"
#include "amm/errors.hpp"
#include "amm/solver.hpp"
