// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "igs/config.hpp"
#include "igs/design.hpp"
#include "igs/errors.hpp"
#include "igs/laguerre.hpp"
#include "igs/montecarlo.hpp"
#include "igs/outage.hpp"
#include "igs/params.hpp"
#include "igs/rates.hpp"
#include "igs/sweep.hpp"
#include "igs/units.hpp"
