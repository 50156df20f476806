// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace igs {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

} // namespace igs
