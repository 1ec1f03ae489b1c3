#pragma once

// Umbrella header.

#include "suds/detectors/auc.hpp"
#include "suds/detectors/d3.hpp"
#include "suds/detectors/ocdd.hpp"
#include "suds/evaluation/harness.hpp"
#include "suds/evaluation/metrics.hpp"
#include "suds/learners/hoeffding_tree.hpp"
#include "suds/learners/kernel.hpp"
#include "suds/learners/logistic.hpp"
#include "suds/learners/one_class_svm.hpp"
#include "suds/sample.hpp"
#include "suds/selectors.hpp"
#include "suds/streams/generators.hpp"
#include "suds/streams/loaders.hpp"
#include "suds/window.hpp"
