#pragma once

#include "densecode/bounds.hpp"
#include "densecode/error.hpp"
#include "densecode/linalg.hpp"
#include "densecode/measures.hpp"
#include "densecode/protocols.hpp"
#include "densecode/states.hpp"
#include "densecode/thresholds.hpp"
