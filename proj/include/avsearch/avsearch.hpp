#pragma once

#include "avsearch/anticipation.hpp"
#include "avsearch/attention.hpp"
#include "avsearch/bumps.hpp"
#include "avsearch/config_io.hpp"
#include "avsearch/errors.hpp"
#include "avsearch/field_grid.hpp"
#include "avsearch/field_step.hpp"
#include "avsearch/grid_io.hpp"
#include "avsearch/kernels.hpp"
#include "avsearch/lattice.hpp"
#include "avsearch/memory.hpp"
#include "avsearch/network.hpp"
#include "avsearch/perception.hpp"
#include "avsearch/prediction.hpp"
#include "avsearch/reference_oracle.hpp"
#include "avsearch/scan_runner.hpp"
#include "avsearch/sim_config.hpp"
