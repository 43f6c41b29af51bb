// sps1d.hpp — umbrella include for the whole library.

#pragma once

#include "sps1d/config.hpp"
#include "sps1d/dressed.hpp"
#include "sps1d/io.hpp"
#include "sps1d/overlap.hpp"
#include "sps1d/params.hpp"
#include "sps1d/run.hpp"
#include "sps1d/scattering.hpp"
#include "sps1d/spectra.hpp"
#include "sps1d/wavepacket.hpp"
