#pragma once

#include "fadecap/allocation.hpp"
#include "fadecap/channel.hpp"
#include "fadecap/errors.hpp"
#include "fadecap/fading_paper.hpp"
#include "fadecap/gaps.hpp"
#include "fadecap/muf.hpp"
#include "fadecap/oracle.hpp"
#include "fadecap/verify.hpp"
#include "fadecap/worst_case.hpp"
