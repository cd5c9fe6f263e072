#pragma once

#include "slitwave/cli.hpp"
#include "slitwave/config.hpp"
#include "slitwave/core.hpp"
#include "slitwave/fields.hpp"
#include "slitwave/fresnel.hpp"
#include "slitwave/io.hpp"
#include "slitwave/kernels.hpp"
#include "slitwave/nullmap.hpp"
#include "slitwave/parallel.hpp"
#include "slitwave/rng.hpp"
#include "slitwave/types.hpp"
