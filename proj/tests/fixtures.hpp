#pragma once

#include "prismalab/generators.hpp"

namespace fixtures {

using prismalab::gen::random_elem;
using prismalab::gen::random_fl_candidate;
using prismalab::gen::random_finite_phi_module;

}  // namespace fixtures
