// Copyright 2026 The fnfdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>

#include "fnfdist/oracles.hpp"

namespace fnfdist::detail {

PowerOracle oracle_with_retries(const PrimeField& field, GraphEncoding& enc, Rng& rng, const OracleConfig& config,
                                std::size_t* fnf_calls = nullptr);

}  // namespace fnfdist::detail
