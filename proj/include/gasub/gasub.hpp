#pragma once

#include "gasub/blade.hpp"
#include "gasub/blade_engine.hpp"
#include "gasub/eval.hpp"
#include "gasub/lift.hpp"
#include "gasub/linear_operator.hpp"
#include "gasub/multivector.hpp"
#include "gasub/oracle.hpp"
#include "gasub/parse.hpp"
#include "gasub/signature.hpp"
#include "gasub/subspace_ops.hpp"
