#pragma once

#include "ladm/adomian.hpp"
#include "ladm/approximants.hpp"
#include "ladm/errors.hpp"
#include "ladm/oracle.hpp"
#include "ladm/series.hpp"
#include "ladm/solver.hpp"
