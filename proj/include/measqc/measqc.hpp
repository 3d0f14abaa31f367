// Copyright 2026 The measqc Authors
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

// Umbrella header. The network adapter lives in measqc/dataset_http.hpp
// and is not included here.

#pragma once

#include "measqc/annotation.hpp"
#include "measqc/dataset.hpp"
#include "measqc/entropy.hpp"
#include "measqc/error.hpp"
#include "measqc/output_parser.hpp"
#include "measqc/quantity_parser.hpp"
#include "measqc/reward.hpp"
#include "measqc/reward_quantity.hpp"
#include "measqc/reward_relation.hpp"
#include "measqc/scorer.hpp"

namespace measqc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace measqc
