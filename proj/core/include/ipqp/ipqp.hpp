// Copyright 2026 The ipqp Authors
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


#ifndef IPQP_IPQP_HPP
#define IPQP_IPQP_HPP

#include "ipqp/diagnostics.hpp"
#include "ipqp/equilibration.hpp"
#include "ipqp/errors.hpp"
#include "ipqp/explicit_ipm.hpp"
#include "ipqp/implicit_ipm.hpp"
#include "ipqp/inexact.hpp"
#include "ipqp/qp_problem.hpp"
#include "ipqp/qps_io.hpp"
#include "ipqp/retraction.hpp"
#include "ipqp/solve.hpp"
#include "ipqp/solver_config.hpp"

#endif // IPQP_IPQP_HPP
