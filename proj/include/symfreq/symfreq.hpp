/*
 * Copyright 2026 The symfreq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SYMFREQ_SYMFREQ_HPP
#define SYMFREQ_SYMFREQ_HPP

#include "symfreq/alphabet.hpp"
#include "symfreq/analysis.hpp"
#include "symfreq/count_vector.hpp"
#include "symfreq/counter.hpp"
#include "symfreq/decode.hpp"
#include "symfreq/engine.hpp"
#include "symfreq/error.hpp"
#include "symfreq/format.hpp"
#include "symfreq/generators.hpp"
#include "symfreq/measure.hpp"
#include "symfreq/rational.hpp"
#include "symfreq/splitmix64.hpp"
#include "symfreq/stream.hpp"

#endif  // SYMFREQ_SYMFREQ_HPP
