// Copyright 2026 The sdc Authors
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

// Numerical core. report.hpp and cli.hpp additionally need nlohmann/json
// and OpenSSL and are not pulled in here.
#include "sdc/dense_coding.hpp"
#include "sdc/error.hpp"
#include "sdc/matrix.hpp"
#include "sdc/optimizer.hpp"
#include "sdc/protocol_sim.hpp"
#include "sdc/spectral.hpp"
#include "sdc/state.hpp"
