// Copyright 2026 The intentnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "intentnav/errors.hpp"
#include "intentnav/geom.hpp"
#include "intentnav/rng.hpp"
#include "intentnav/delaunay.hpp"
#include "intentnav/topomap.hpp"
#include "intentnav/json_util.hpp"
#include "intentnav/map_io.hpp"
#include "intentnav/planner.hpp"
#include "intentnav/costmap.hpp"
#include "intentnav/bev.hpp"
#include "intentnav/world.hpp"
#include "intentnav/world_io.hpp"
#include "intentnav/policy.hpp"
#include "intentnav/train.hpp"
#include "intentnav/weights_io.hpp"
#include "intentnav/mapping.hpp"
#include "intentnav/training_data.hpp"
#include "intentnav/episode.hpp"
#include "intentnav/tasks.hpp"
#include "intentnav/metrics.hpp"
#include "intentnav/sweep.hpp"
#include "intentnav/svg.hpp"
#include "intentnav/pipeline.hpp"
#include "intentnav/config.hpp"
