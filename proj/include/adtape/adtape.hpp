// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License.  You
// may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied.  See the License for the specific language governing
// permissions and limitations under the License.

#ifndef ADTAPE_ADTAPE_HPP
#define ADTAPE_ADTAPE_HPP

#include "adtape/core/arena.hpp"
#include "adtape/core/sweep.hpp"
#include "adtape/core/tape.hpp"
#include "adtape/core/var.hpp"
#include "adtape/functional/finite_diff.hpp"
#include "adtape/functional/gradient.hpp"
#include "adtape/functions/elementary.hpp"
#include "adtape/functions/reductions.hpp"
#include "adtape/matrix/log_determinant.hpp"
#include "adtape/matrix/matrix.hpp"
#include "adtape/matrix/multiply.hpp"
#include "adtape/ode/coupled.hpp"
#include "adtape/ode/integrate.hpp"
#include "adtape/ode/rk45.hpp"
#include "adtape/prob/broadcast.hpp"
#include "adtape/prob/checks.hpp"
#include "adtape/prob/normal_log.hpp"
#include "adtape/prob/operands_partials.hpp"
#include "adtape/prob/traits.hpp"

#endif  // ADTAPE_ADTAPE_HPP
