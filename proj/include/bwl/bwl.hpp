#pragma once

#include "bwl/errors.hpp"
#include "bwl/tolerance.hpp"
#include "bwl/tensor.hpp"
#include "bwl/weyl.hpp"
#include "bwl/witness.hpp"
#include "bwl/positivity.hpp"
#include "bwl/decomposition.hpp"
#include "bwl/orthogonal.hpp"
#include "bwl/classify.hpp"
#include "bwl/geometry.hpp"
#include "bwl/io.hpp"
