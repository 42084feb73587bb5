#ifndef DEGENOP_DEGENOP_HPP
#define DEGENOP_DEGENOP_HPP

#include "degenop/assembly.hpp"
#include "degenop/basis.hpp"
#include "degenop/classify.hpp"
#include "degenop/common.hpp"
#include "degenop/config.hpp"
#include "degenop/csv.hpp"
#include "degenop/cutoff.hpp"
#include "degenop/expression.hpp"
#include "degenop/function_sample.hpp"
#include "degenop/polynomial.hpp"
#include "degenop/profile.hpp"
#include "degenop/quadrature.hpp"
#include "degenop/report.hpp"
#include "degenop/solver.hpp"
#include "degenop/spaces.hpp"
#include "degenop/spectral.hpp"

#endif
