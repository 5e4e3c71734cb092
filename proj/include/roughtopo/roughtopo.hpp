#pragma once

#include "roughtopo/subset.hpp"
#include "roughtopo/rational.hpp"
#include "roughtopo/finite_function.hpp"
#include "roughtopo/finite_topology.hpp"
#include "roughtopo/near_open.hpp"
#include "roughtopo/approximation_space.hpp"
#include "roughtopo/rough_numbers.hpp"
#include "roughtopo/rough_functions.hpp"
#include "roughtopo/information_system.hpp"
