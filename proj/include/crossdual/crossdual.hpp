#pragma once

// Umbrella header.

#include "crossdual/matrix.hpp"
#include "crossdual/linalg.hpp"
#include "crossdual/wedderburn.hpp"
#include "crossdual/group.hpp"
#include "crossdual/algebra.hpp"
#include "crossdual/projective.hpp"
#include "crossdual/covariant.hpp"
#include "crossdual/mackey.hpp"
#include "crossdual/oracle.hpp"
#include "crossdual/io.hpp"
