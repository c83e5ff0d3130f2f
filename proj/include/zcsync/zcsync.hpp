#pragma once

#include "zcsync/correlation.hpp"
#include "zcsync/detection.hpp"
#include "zcsync/error.hpp"
#include "zcsync/parallel.hpp"
#include "zcsync/quadrature.hpp"
#include "zcsync/root_selector.hpp"
#include "zcsync/sequence.hpp"
#include "zcsync/simulation.hpp"
#include "zcsync/special_functions.hpp"
#include "zcsync/timing_spectrum.hpp"
