// Copyright 2026 The dks Authors.
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

#ifndef DKS_DKS_HPP_
#define DKS_DKS_HPP_

#include "dks/admm.hpp"
#include "dks/certificate.hpp"
#include "dks/errors.hpp"
#include "dks/experiments.hpp"
#include "dks/graph.hpp"
#include "dks/io.hpp"
#include "dks/linalg.hpp"
#include "dks/oracle.hpp"
#include "dks/planted.hpp"
#include "dks/prox.hpp"
#include "dks/rng.hpp"

#endif  // DKS_DKS_HPP_
