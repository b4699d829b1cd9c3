#pragma once

#include "wodot/congruence.hpp"
#include "wodot/error.hpp"
#include "wodot/group.hpp"
#include "wodot/limits.hpp"
#include "wodot/sequence.hpp"
#include "wodot/theorem.hpp"
#include "wodot/weighted_sumset.hpp"
#include "wodot/zerosum.hpp"
