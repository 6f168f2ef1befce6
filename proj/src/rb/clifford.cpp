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


#include "cdpq/rb/clifford.hpp"

#include <cmath>
#include <string>

#include "cdpq/core/linalg.hpp"

namespace cdpq {
namespace {

using G = GateName;

Operator rotation(const Operator& sigma, double angle) {
    const cplx i(0, 1);
    return std::cos(angle / 2) * Operator::Identity(2, 2) - i * std::sin(angle / 2) * sigma;
}

double phase_overlap(const Operator& u, const Operator& v) { return std::abs((u.adjoint() * v).trace()) / 2.0; }

}  // namespace

Operator ideal_primitive(GateName name) {
    switch (name) {
        case G::I: return Operator::Identity(2, 2);
        case G::X2: return rotation(sigma_x(), kPi / 2);
        case G::MinusX2: return rotation(sigma_x(), -kPi / 2);
        case G::Y2: return rotation(sigma_y(), kPi / 2);
        case G::MinusY2: return rotation(sigma_y(), -kPi / 2);
        case G::Z: return rotation(sigma_z(), kPi);
        case G::Z2: return rotation(sigma_z(), kPi / 2);
        case G::MinusZ2: return rotation(sigma_z(), -kPi / 2);
        default: break;
    }
    throw Error(ErrorCode::UnsupportedGate, "ideal_primitive: not a Clifford primitive");
}

std::vector<CliffordElement> build_clifford_table() {
    const std::vector<std::vector<G>> rows = {
        {G::I},
        {G::X2, G::X2},
        {G::Y2, G::Y2},
        {G::Z},
        {G::X2, G::MinusZ2},
        {G::X2, G::Z2},
        {G::MinusX2, G::Z2},
        {G::MinusX2, G::MinusZ2},
        {G::Y2, G::Z2},
        {G::Y2, G::MinusZ2},
        {G::MinusY2, G::MinusZ2},
        {G::MinusY2, G::Z2},
        {G::X2},
        {G::MinusX2},
        {G::Y2},
        {G::MinusY2},
        {G::Z2},
        {G::MinusZ2},
        {G::Z, G::Y2},
        {G::Z, G::MinusY2},
        {G::MinusX2, G::Z},
        {G::X2, G::Z},
        {G::X2, G::X2, G::MinusZ2},
        {G::MinusZ2, G::X2, G::X2},
    };
    std::vector<CliffordElement> table;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CliffordElement e;
        e.id = static_cast<int>(k) + 1;
        e.primitives = rows[k];
        e.unitary = Operator::Identity(2, 2);
        for (G g : rows[k]) e.unitary = (ideal_primitive(g) * e.unitary).eval();
        table.push_back(std::move(e));
    }
    for (std::size_t a = 0; a < table.size(); ++a) {
        for (std::size_t b = a + 1; b < table.size(); ++b) {
            if (phase_overlap(table[a].unitary, table[b].unitary) > 1.0 - 1e-9) {
                throw Error(ErrorCode::TableIntegrity, "clifford table: elements " + std::to_string(a + 1) + " and " +
                                                           std::to_string(b + 1) + " coincide");
            }
        }
    }
    for (const auto& x : table) {
        for (const auto& y : table) {
            const Operator prod = y.unitary * x.unitary;
            bool found = false;
            for (const auto& z : table) {
                if (phase_invariant_distance(prod, z.unitary) < 1e-10) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw Error(ErrorCode::TableIntegrity, "clifford table: product of " + std::to_string(x.id) + " and " +
                                                           std::to_string(y.id) + " leaves the set");
            }
        }
    }
    return table;
}

const std::vector<CliffordElement>& clifford_table() {
    static const std::vector<CliffordElement> table = build_clifford_table();
    return table;
}

int find_clifford(const Operator& u, double tol) {
    for (const auto& e : clifford_table()) {
        if (phase_overlap(e.unitary, u) > 1.0 - tol) return e.id;
    }
    throw Error(ErrorCode::TableIntegrity, "find_clifford: unitary is not in the table");
}

int recovery_for(const std::vector<int>& ids) {
    const auto& table = clifford_table();
    Operator u = Operator::Identity(2, 2);
    for (int id : ids) u = (table.at(static_cast<std::size_t>(id - 1)).unitary * u).eval();
    return find_clifford(u.adjoint());
}

RbSequence rb_sequence(int m, RngStream& rng) {
    if (m < 1) throw Error(ErrorCode::Validation, "rb_sequence: m must be >= 1");
    std::uniform_int_distribution<int> pick(1, 24);
    RbSequence seq;
    seq.ids.resize(static_cast<std::size_t>(m));
    for (auto& id : seq.ids) id = pick(rng);
    seq.recovery = recovery_for(seq.ids);
    return seq;
}

Operator sequence_unitary(const RbSequence& seq) {
    const auto& table = clifford_table();
    Operator u = Operator::Identity(2, 2);
    for (int id : seq.ids) u = (table.at(static_cast<std::size_t>(id - 1)).unitary * u).eval();
    return table.at(static_cast<std::size_t>(seq.recovery - 1)).unitary * u;
}

std::vector<GateSpec> expand(const RbSequence& seq) {
    const auto& table = clifford_table();
    std::vector<GateSpec> out;
    auto add = [&](int id) {
        for (G g : table.at(static_cast<std::size_t>(id - 1)).primitives) out.push_back(GateSpec::make(g));
    };
    for (int id : seq.ids) add(id);
    add(seq.recovery);
    return out;
}

}  // namespace cdpq
