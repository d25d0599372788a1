#pragma once

#include "qmean/errors.hpp"
#include "qmean/ising.hpp"
#include "qmean/lightcone.hpp"
#include "qmean/mean_value.hpp"
#include "qmean/nelder_mead.hpp"
#include "qmean/oracle.hpp"
#include "qmean/problems.hpp"
#include "qmean/statevector.hpp"
