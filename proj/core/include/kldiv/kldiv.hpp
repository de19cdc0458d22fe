#pragma once

// Umbrella header for the kldiv core library.

#include "kldiv/divergence.hpp"
#include "kldiv/errors.hpp"
#include "kldiv/gaussian.hpp"
#include "kldiv/identities.hpp"
#include "kldiv/linalg.hpp"
#include "kldiv/mc_estimator.hpp"
#include "kldiv/rng.hpp"
#include "kldiv/vae_kl.hpp"
