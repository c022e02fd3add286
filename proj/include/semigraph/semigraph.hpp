#pragma once
#include "semigraph/correspondence.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/graph.hpp"
#include "semigraph/json_io.hpp"
#include "semigraph/minor.hpp"
#include "semigraph/semigroup.hpp"
#include "semigraph/theorem.hpp"
