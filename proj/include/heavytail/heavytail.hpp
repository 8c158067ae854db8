// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "heavytail/csv.hpp"
#include "heavytail/diagnostics.hpp"
#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/fit.hpp"
#include "heavytail/limit_models.hpp"
#include "heavytail/put_tail_down.hpp"
#include "heavytail/rng.hpp"
#include "heavytail/serde.hpp"
#include "heavytail/stable.hpp"
#include "heavytail/statistics.hpp"
#include "heavytail/svg.hpp"
#include "heavytail/tail_bounds.hpp"
