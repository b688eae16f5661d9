#pragma once

#include "burnside_lab/bisets.hpp"
#include "burnside_lab/burnside.hpp"
#include "burnside_lab/errors.hpp"
#include "burnside_lab/f2.hpp"
#include "burnside_lab/functor_lab.hpp"
#include "burnside_lab/groups.hpp"
#include "burnside_lab/lattice.hpp"
#include "burnside_lab/units.hpp"
