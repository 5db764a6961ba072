#pragma once

#include "qbsens/dataset.hpp"
#include "qbsens/error.hpp"
#include "qbsens/fixture.hpp"
#include "qbsens/inference.hpp"
#include "qbsens/perturb.hpp"
#include "qbsens/ratings.hpp"
#include "qbsens/report.hpp"
#include "qbsens/sensitivity.hpp"
#include "qbsens/stat_line.hpp"
