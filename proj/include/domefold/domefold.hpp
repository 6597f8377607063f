#pragma once

#include "domefold/banding.hpp"
#include "domefold/experiments.hpp"
#include "domefold/geometry.hpp"
#include "domefold/mesh.hpp"
#include "domefold/serialize.hpp"
#include "domefold/trees.hpp"
#include "domefold/unfold.hpp"
