#pragma once

// Umbrella header.

#include "elastocald/bessel.hpp"
#include "elastocald/closed_ops.hpp"
#include "elastocald/common.hpp"
#include "elastocald/cosine_basis.hpp"
#include "elastocald/geometry.hpp"
#include "elastocald/io.hpp"
#include "elastocald/kernels.hpp"
#include "elastocald/material.hpp"
#include "elastocald/open_ops.hpp"
#include "elastocald/quadrature.hpp"
#include "elastocald/solver.hpp"
#include "elastocald/spectra.hpp"
