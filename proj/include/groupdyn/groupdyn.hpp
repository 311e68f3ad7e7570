#pragma once

#include "groupdyn/bands.hpp"
#include "groupdyn/cost.hpp"
#include "groupdyn/fit.hpp"
#include "groupdyn/io.hpp"
#include "groupdyn/ladder.hpp"
#include "groupdyn/model.hpp"
#include "groupdyn/numerics.hpp"
#include "groupdyn/promises.hpp"
#include "groupdyn/rng.hpp"
#include "groupdyn/simulate.hpp"
