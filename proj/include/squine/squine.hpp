#pragma once

#include "squine/bigfloat_series.hpp"
#include "squine/bigreal.hpp"
#include "squine/errors.hpp"
#include "squine/exact_series.hpp"
#include "squine/experiments.hpp"
#include "squine/format.hpp"
#include "squine/ntheory.hpp"
#include "squine/rational.hpp"
#include "squine/report_io.hpp"
#include "squine/summation.hpp"
