// Copyright (C) 2026 The slnpoly Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "slnpoly/coefficients.hpp"
#include "slnpoly/cyclotomic.hpp"
#include "slnpoly/epoly.hpp"
#include "slnpoly/exactmath.hpp"
#include "slnpoly/ffgroups.hpp"
#include "slnpoly/gamma.hpp"
#include "slnpoly/parallel.hpp"
#include "slnpoly/partitions.hpp"
#include "slnpoly/posets.hpp"
#include "slnpoly/types.hpp"
