// Copyright 2026 The locc Authors
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

#include "locc/builtin.hpp"
#include "locc/convert.hpp"
#include "locc/cp_als.hpp"
#include "locc/error.hpp"
#include "locc/gates.hpp"
#include "locc/party_tensor.hpp"
#include "locc/protocol.hpp"
#include "locc/protocol_file.hpp"
#include "locc/schmidt.hpp"
#include "locc/serialize.hpp"
#include "locc/slocc.hpp"
#include "locc/state.hpp"
