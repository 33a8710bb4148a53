#pragma once

#include "qhc/bipoly.hpp"
#include "qhc/configuration.hpp"
#include "qhc/equivalence.hpp"
#include "qhc/errors.hpp"
#include "qhc/moduli.hpp"
#include "qhc/parse.hpp"
#include "qhc/quasihom.hpp"
#include "qhc/resolution.hpp"
#include "qhc/scalar.hpp"
#include "qhc/univariate.hpp"
