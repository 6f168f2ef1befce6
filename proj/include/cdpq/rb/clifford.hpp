// Copyright 2026 The CDPQ Authors
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


#ifndef CDPQ_RB_CLIFFORD_HPP
#define CDPQ_RB_CLIFFORD_HPP

#include <vector>

#include "cdpq/core/random.hpp"
#include "cdpq/core/types.hpp"
#include "cdpq/gates/schedule.hpp"

namespace cdpq {

/// Primitives are listed in time order: the first acts first.
struct CliffordElement {
    int id = 0;  // 1..24
    std::vector<GateName> primitives;
    Operator unitary;  // 2x2, product of the ideal primitive rotations
};

/// Ideal SU(2) action of a primitive: R_x(+-pi/2), R_y(+-pi/2), R_z(pi),
/// R_z(+-pi/2) or I. R_a(t) = exp(-i t sigma_a / 2).
Operator ideal_primitive(GateName name);

/// The 24-element table. Closure (all 576 products) and pairwise
/// distinctness are checked; a failure raises TableIntegrity.
std::vector<CliffordElement> build_clifford_table();

/// Cached, validated table shared by the rest of the library.
const std::vector<CliffordElement>& clifford_table();

/// id of the element equal to u up to global phase (|tr(U^dag V)|/2 = 1
/// within tol). Throws TableIntegrity if none matches.
int find_clifford(const Operator& u, double tol = 1e-9);

struct RbSequence {
    std::vector<int> ids;
    int recovery = 1;
};

/// m uniformly random ids plus the element inverting their product.
RbSequence rb_sequence(int m, RngStream& rng);

/// Recovery for a fixed id list.
int recovery_for(const std::vector<int>& ids);

/// Ideal unitary of ids followed by the recovery.
Operator sequence_unitary(const RbSequence& seq);

/// Primitive list of the whole sequence including the recovery.
std::vector<GateSpec> expand(const RbSequence& seq);

}  // namespace cdpq

#endif  // CDPQ_RB_CLIFFORD_HPP
