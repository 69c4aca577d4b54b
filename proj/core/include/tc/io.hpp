#pragma once

#include <nlohmann/json.hpp>

#include "tc/oracle.hpp"
#include "tc/state.hpp"

namespace tc {

/// [{"atoms": "eg", "photons": 1, "re": 0.5, "im": -0.5}, ...] in label order.
nlohmann::json state_to_json(const JointState& state);

/// Throws SchemaError on malformed input, duplicate labels, or when
/// `expected_atoms` (if positive) disagrees with the labels. An empty array
/// needs `expected_atoms` to fix the atom count.
JointState state_from_json(const nlohmann::json& doc, int expected_atoms = 0);

/// {"check", "n", "K", "residual"}; K is null for sector-independent checks.
nlohmann::json record_to_json(const ResidualRecord& record);

}  // namespace tc
