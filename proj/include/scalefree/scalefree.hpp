#pragma once

#include "scalefree/evolution.hpp"
#include "scalefree/fft.hpp"
#include "scalefree/golden.hpp"
#include "scalefree/io.hpp"
#include "scalefree/params.hpp"
#include "scalefree/phi.hpp"
#include "scalefree/process.hpp"
#include "scalefree/rng.hpp"
#include "scalefree/spectrum.hpp"
#include "scalefree/version.hpp"
