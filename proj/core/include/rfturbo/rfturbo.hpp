// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rfturbo/analysis.hpp"
#include "rfturbo/channel.hpp"
#include "rfturbo/codec.hpp"
#include "rfturbo/error.hpp"
#include "rfturbo/filterbank.hpp"
#include "rfturbo/frames.hpp"
#include "rfturbo/interleaver.hpp"
#include "rfturbo/io.hpp"
#include "rfturbo/numerics.hpp"
#include "rfturbo/parallel.hpp"
