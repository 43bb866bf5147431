#pragma once

#include "arena/csv.hpp"
#include "arena/errors.hpp"
#include "arena/exact_nofluct.hpp"
#include "arena/gaussian.hpp"
#include "arena/inference.hpp"
#include "arena/normal_approx.hpp"
#include "arena/rng.hpp"
#include "arena/simulator.hpp"
#include "arena/types.hpp"
#include "arena/worldcup.hpp"
