#pragma once

// Umbrella header for the hyperlet library: labeled-hypergraph model, duality
// transforms, hypergraphlet counting and edit-distance kernels, Polya
// enumeration of the labeled feature space, baseline kernels, and the
// SVM/cross-validation evaluation harness.

#include "hyperlet/baselines.hpp"
#include "hyperlet/counting.hpp"
#include "hyperlet/duality.hpp"
#include "hyperlet/edit.hpp"
#include "hyperlet/errors.hpp"
#include "hyperlet/hypergraph.hpp"
#include "hyperlet/hypergraphlet.hpp"
#include "hyperlet/kernel.hpp"
#include "hyperlet/learn.hpp"
#include "hyperlet/matrix.hpp"
#include "hyperlet/parallel.hpp"
#include "hyperlet/polya.hpp"
#include "hyperlet/rng.hpp"
#include "hyperlet/synthetic.hpp"
