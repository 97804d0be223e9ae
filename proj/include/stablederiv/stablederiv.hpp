#pragma once

#include "stablederiv/adversary.hpp"
#include "stablederiv/corpus.hpp"
#include "stablederiv/csv.hpp"
#include "stablederiv/errors.hpp"
#include "stablederiv/estimator.hpp"
#include "stablederiv/format.hpp"
#include "stablederiv/function_model.hpp"
#include "stablederiv/inequalities.hpp"
#include "stablederiv/study.hpp"
