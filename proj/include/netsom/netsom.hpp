#pragma once

#include "netsom/generators.hpp"
#include "netsom/graph.hpp"
#include "netsom/io.hpp"
#include "netsom/metrics.hpp"
#include "netsom/parallel.hpp"
#include "netsom/pipeline.hpp"
#include "netsom/rng.hpp"
#include "netsom/sir.hpp"
#include "netsom/som.hpp"
#include "netsom/spd.hpp"
#include "netsom/stats.hpp"
#include "netsom/svg.hpp"
#include "netsom/trace.hpp"
