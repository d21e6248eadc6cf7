// vdw.hpp - umbrella header for the core library.
#pragma once

#include "vdw/asymptotics.hpp"
#include "vdw/atoms.hpp"
#include "vdw/fields.hpp"
#include "vdw/forces.hpp"
#include "vdw/greens.hpp"
#include "vdw/potentials.hpp"
#include "vdw/presets.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/units.hpp"
