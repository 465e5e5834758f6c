// Copyright 2026 The efmart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EFMART_EFMART_HPP_
#define EFMART_EFMART_HPP_

#include "efmart/errors.hpp"
#include "efmart/experiments.hpp"
#include "efmart/forecast.hpp"
#include "efmart/io.hpp"
#include "efmart/ks.hpp"
#include "efmart/parallel.hpp"
#include "efmart/pricing.hpp"
#include "efmart/process.hpp"
#include "efmart/rng.hpp"
#include "efmart/sde.hpp"
#include "efmart/special.hpp"
#include "efmart/svg.hpp"
#include "efmart/time_grid.hpp"

#endif  // EFMART_EFMART_HPP_
