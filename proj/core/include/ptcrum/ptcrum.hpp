#pragma once

#include "ptcrum/darboux.hpp"
#include "ptcrum/errors.hpp"
#include "ptcrum/expr.hpp"
#include "ptcrum/grid.hpp"
#include "ptcrum/models.hpp"
#include "ptcrum/reference.hpp"
#include "ptcrum/spectral.hpp"
#include "ptcrum/susy.hpp"
#include "ptcrum/version.hpp"
