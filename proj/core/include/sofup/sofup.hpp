#pragma once

#include "sofup/errors.hpp"
#include "sofup/kron.hpp"
#include "sofup/mdrp.hpp"
#include "sofup/perturb.hpp"
#include "sofup/region.hpp"
#include "sofup/scan.hpp"
#include "sofup/sim.hpp"
#include "sofup/statespace.hpp"
#include "sofup/update.hpp"
