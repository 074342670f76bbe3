#pragma once

#include "moddiag/correspondence.hpp"
#include "moddiag/double_cover.hpp"
#include "moddiag/error.hpp"
#include "moddiag/formal.hpp"
#include "moddiag/gamma.hpp"
#include "moddiag/linalg.hpp"
#include "moddiag/model.hpp"
#include "moddiag/model_io.hpp"
#include "moddiag/morphism.hpp"
#include "moddiag/polynomial.hpp"
#include "moddiag/projectors.hpp"
#include "moddiag/rational.hpp"
#include "moddiag/suites.hpp"
#include "moddiag/tensor.hpp"
