#pragma once

#include "supercong/errors.hpp"
#include "supercong/modulus.hpp"
#include "supercong/oracle.hpp"
#include "supercong/rational.hpp"
#include "supercong/registry.hpp"
#include "supercong/residue.hpp"
#include "supercong/rng.hpp"
#include "supercong/sequences.hpp"
#include "supercong/suite.hpp"
#include "supercong/sums.hpp"
#include "supercong/u128.hpp"
