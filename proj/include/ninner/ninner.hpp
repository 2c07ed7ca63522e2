#pragma once

#include "ninner/applications.hpp"
#include "ninner/axioms.hpp"
#include "ninner/dodgson.hpp"
#include "ninner/errors.hpp"
#include "ninner/linalg.hpp"
#include "ninner/parse.hpp"
#include "ninner/products.hpp"
#include "ninner/rational.hpp"
#include "ninner/rng.hpp"
#include "ninner/scalar.hpp"
#include "ninner/suites.hpp"
