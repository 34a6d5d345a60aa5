#pragma once

#include "lrnn/assembly.hpp"
#include "lrnn/basis.hpp"
#include "lrnn/config.hpp"
#include "lrnn/diagnostics.hpp"
#include "lrnn/error.hpp"
#include "lrnn/geometry.hpp"
#include "lrnn/linsolve.hpp"
#include "lrnn/mesh.hpp"
#include "lrnn/postproc.hpp"
#include "lrnn/problem.hpp"
#include "lrnn/quadrature.hpp"
#include "lrnn/runner.hpp"
#include "lrnn/system.hpp"
