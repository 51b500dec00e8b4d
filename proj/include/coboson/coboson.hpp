#pragma once

#include "coboson/chi.hpp"
#include "coboson/fock_oracle.hpp"
#include "coboson/grid_wavefunction.hpp"
#include "coboson/hydrogen.hpp"
#include "coboson/io.hpp"
#include "coboson/quadrature.hpp"
#include "coboson/report.hpp"
#include "coboson/scaled_double.hpp"
#include "coboson/schmidt_spectrum.hpp"
#include "coboson/verify.hpp"
#include "coboson/version.hpp"
