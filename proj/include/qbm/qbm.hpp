// Copyright 2026 The qbm-infogeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qbm/bp_channel.hpp"
#include "qbm/filter.hpp"
#include "qbm/gibbs.hpp"
#include "qbm/hamiltonian.hpp"
#include "qbm/info_geometry.hpp"
#include "qbm/instances.hpp"
#include "qbm/metrology.hpp"
#include "qbm/natgrad.hpp"
#include "qbm/operator_core.hpp"
#include "qbm/random.hpp"
#include "qbm/shot_estimators.hpp"
