#pragma once

#include "troptree/exact/coeff_poly.hpp"
#include "troptree/exact/poly_matrix.hpp"
#include "troptree/exact/puiseux.hpp"
#include "troptree/exact/rational.hpp"
#include "troptree/io/csv.hpp"
#include "troptree/io/json.hpp"
#include "troptree/metrics/conditions.hpp"
#include "troptree/metrics/dissimilarity.hpp"
#include "troptree/metrics/reconstruct.hpp"
#include "troptree/trees/equidistant_tree.hpp"
#include "troptree/trees/newick.hpp"
#include "troptree/trees/random_trees.hpp"
#include "troptree/trees/shape.hpp"
#include "troptree/trees/weighted_tree.hpp"
#include "troptree/tropical/tropical.hpp"
#include "troptree/util/check.hpp"
#include "troptree/util/parallel.hpp"
#include "troptree/util/subsets.hpp"
#include "troptree/verify/assignment.hpp"
#include "troptree/verify/leading_coeff.hpp"
#include "troptree/verify/pipelines.hpp"
#include "troptree/verify/report.hpp"
#include "troptree/verify/witness.hpp"
