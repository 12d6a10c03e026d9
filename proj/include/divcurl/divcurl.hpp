#pragma once

#include "divcurl/error.hpp"
#include "divcurl/mesh.hpp"
#include "divcurl/mesh_io.hpp"
#include "divcurl/sparse.hpp"
#include "divcurl/linsolve.hpp"
#include "divcurl/fem.hpp"
#include "divcurl/field_io.hpp"
#include "divcurl/spectra.hpp"
#include "divcurl/decompose.hpp"
#include "divcurl/bvp.hpp"
#include "divcurl/manufactured.hpp"
