// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ebp/asymptotics.hpp"
#include "ebp/bernoulli.hpp"
#include "ebp/ebp_engine.hpp"
#include "ebp/fixtures.hpp"
#include "ebp/format.hpp"
#include "ebp/lame_spectral.hpp"
#include "ebp/matrix.hpp"
#include "ebp/multipoly.hpp"
#include "ebp/quantum_top.hpp"
#include "ebp/rational.hpp"
#include "ebp/symmetric.hpp"
#include "ebp/upoly.hpp"
#include "ebp/verify.hpp"
