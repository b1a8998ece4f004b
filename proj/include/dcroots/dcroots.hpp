#pragma once

#include "errors.hpp"
#include "core.hpp"
#include "poly.hpp"
#include "roots.hpp"
#include "bounds.hpp"
#include "oracle.hpp"
#include "homotopy.hpp"
#include "eigencount.hpp"
#include "extremal.hpp"
#include "sampling.hpp"
#include "serialize.hpp"
