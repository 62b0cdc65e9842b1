#pragma once

#include "common.hpp"
#include "engines.hpp"
#include "genotype.hpp"
#include "harness.hpp"
#include "instance.hpp"
#include "metrics.hpp"
#include "objectives.hpp"
#include "operators.hpp"
#include "random.hpp"
