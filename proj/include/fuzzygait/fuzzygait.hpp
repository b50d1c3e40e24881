#pragma once

// Umbrella header for the whole library.

#include "fuzzygait/common.hpp"
#include "fuzzygait/evaluation.hpp"
#include "fuzzygait/fcm.hpp"
#include "fuzzygait/feature_csv.hpp"
#include "fuzzygait/gait_features.hpp"
#include "fuzzygait/learning.hpp"
#include "fuzzygait/model_io.hpp"
#include "fuzzygait/network.hpp"
#include "fuzzygait/pipeline.hpp"
#include "fuzzygait/preprocess.hpp"
#include "fuzzygait/rule_report.hpp"
#include "fuzzygait/vgrf.hpp"
