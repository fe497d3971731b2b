#pragma once

#include "sqz/error.hpp"
#include "sqz/dicke.hpp"
#include "sqz/oat.hpp"
#include "sqz/conditioning.hpp"
#include "sqz/metrology.hpp"
#include "sqz/noise.hpp"
#include "sqz/wigner.hpp"
#include "sqz/io.hpp"
#include "sqz/sweep.hpp"
