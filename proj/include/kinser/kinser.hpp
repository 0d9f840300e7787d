#pragma once

#include "kinser/axioms.hpp"
#include "kinser/bench.hpp"
#include "kinser/catalog.hpp"
#include "kinser/circuits.hpp"
#include "kinser/dowling.hpp"
#include "kinser/errors.hpp"
#include "kinser/gfp.hpp"
#include "kinser/inequality.hpp"
#include "kinser/io.hpp"
#include "kinser/layout.hpp"
#include "kinser/mask.hpp"
#include "kinser/matroid.hpp"
#include "kinser/search.hpp"
#include "kinser/transforms.hpp"
#include "kinser/transversal.hpp"
