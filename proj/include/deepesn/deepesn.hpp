#pragma once

#include "deepesn/config.hpp"
#include "deepesn/data.hpp"
#include "deepesn/errors.hpp"
#include "deepesn/experiment.hpp"
#include "deepesn/io.hpp"
#include "deepesn/matrix.hpp"
#include "deepesn/measures.hpp"
#include "deepesn/numerics.hpp"
#include "deepesn/readout.hpp"
#include "deepesn/reservoir.hpp"
#include "deepesn/rng.hpp"
