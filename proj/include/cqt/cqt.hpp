#pragma once

#include "analytics.hpp"
#include "coherent_algebra.hpp"
#include "fock_oracle.hpp"
#include "protocol.hpp"
#include "sweep_io.hpp"
#include "verify.hpp"
