// Copyright 2026 The hopsu Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "hopsu/error.hpp"
#include "hopsu/kernel.hpp"
#include "hopsu/oracle.hpp"
#include "hopsu/parser.hpp"
#include "hopsu/print.hpp"
#include "hopsu/similarity.hpp"
#include "hopsu/substitution.hpp"
#include "hopsu/term.hpp"
#include "hopsu/type.hpp"
#include "hopsu/unifier.hpp"
