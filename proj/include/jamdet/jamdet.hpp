#ifndef JAMDET_JAMDET_HPP
#define JAMDET_JAMDET_HPP

#include "jamdet/analysis.hpp"
#include "jamdet/block.hpp"
#include "jamdet/cli.hpp"
#include "jamdet/config.hpp"
#include "jamdet/detector.hpp"
#include "jamdet/io.hpp"
#include "jamdet/jammer.hpp"
#include "jamdet/montecarlo.hpp"
#include "jamdet/pilots.hpp"
#include "jamdet/rng.hpp"
#include "jamdet/special_functions.hpp"
#include "jamdet/system.hpp"

#endif  // JAMDET_JAMDET_HPP
