#pragma once

// Umbrella header.

#include "sullivan/algebra.hpp"
#include "sullivan/ansatz.hpp"
#include "sullivan/automorphism.hpp"
#include "sullivan/case_solver.hpp"
#include "sullivan/classify.hpp"
#include "sullivan/cohomology.hpp"
#include "sullivan/element.hpp"
#include "sullivan/ellipticity.hpp"
#include "sullivan/errors.hpp"
#include "sullivan/frucht.hpp"
#include "sullivan/functor.hpp"
#include "sullivan/graph.hpp"
#include "sullivan/groebner.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/mg.hpp"
#include "sullivan/morphism.hpp"
#include "sullivan/perm_group.hpp"
#include "sullivan/pipeline.hpp"
#include "sullivan/polynomial.hpp"
#include "sullivan/rational.hpp"
#include "sullivan/serialize.hpp"
#include "sullivan/smith.hpp"
#include "sullivan/tilde.hpp"
