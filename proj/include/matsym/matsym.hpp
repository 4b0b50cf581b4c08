#pragma once

#include "primefield.hpp"
#include "numeric.hpp"
#include "models.hpp"
#include "matroid.hpp"
#include "mask.hpp"
#include "symmetry.hpp"
#include "enumeration.hpp"
#include "counting.hpp"
#include "limits.hpp"
#include "moves.hpp"
#include "polykit.hpp"
