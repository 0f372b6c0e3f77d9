// Copyright 2026 The qdwork Authors
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

#ifndef QDWORK_QDWORK_HPP
#define QDWORK_QDWORK_HPP

#include "qdwork/error.hpp"
#include "qdwork/bigpoly.hpp"
#include "qdwork/quiver.hpp"
#include "qdwork/superpot.hpp"
#include "qdwork/trunc.hpp"
#include "qdwork/cache.hpp"
#include "qdwork/qcong.hpp"
#include "qdwork/padics.hpp"

namespace qdwork {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // QDWORK_QDWORK_HPP
