// Copyright 2026 The pronp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pronp/commutant.hpp"
#include "pronp/errors.hpp"
#include "pronp/hill.hpp"
#include "pronp/io.hpp"
#include "pronp/lyapunov.hpp"
#include "pronp/matrix_kit.hpp"
#include "pronp/pro.hpp"
#include "pronp/random.hpp"
#include "pronp/solver.hpp"
