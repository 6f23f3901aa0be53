#pragma once

#include "scx/error.hpp"
#include "scx/random.hpp"
#include "scx/complex.hpp"
#include "scx/io.hpp"
#include "scx/spectral.hpp"
#include "scx/sparsifier.hpp"
#include "scx/cheeger.hpp"
#include "scx/learning.hpp"
#include "scx/datasets.hpp"
#include "scx/config.hpp"
#include "scx/experiments.hpp"
