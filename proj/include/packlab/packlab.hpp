#pragma once

#include "packlab/clique.hpp"
#include "packlab/constructions.hpp"
#include "packlab/correlation.hpp"
#include "packlab/dense_set.hpp"
#include "packlab/error.hpp"
#include "packlab/group.hpp"
#include "packlab/metric_sets.hpp"
#include "packlab/packing.hpp"
#include "packlab/parallel.hpp"
#include "packlab/transform.hpp"
