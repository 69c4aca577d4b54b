#include "tc/io.hpp"

#include <set>
#include <string>

#include "tc/errors.hpp"

namespace tc {

using nlohmann::json;

json state_to_json(const JointState& state) {
  json out = json::array();
  for (const auto& [label, amp] : state.amplitudes()) {
    out.push_back({{"atoms", label.atoms},
                   {"photons", label.photons},
                   {"re", amp.real()},
                   {"im", amp.imag()}});
  }
  return out;
}

namespace {

const json& field(const json& item, const char* name) {
  auto it = item.find(name);
  if (it == item.end()) throw SchemaError(std::string("state entry is missing \"") + name + "\"");
  return *it;
}

double number(const json& item, const char* name) {
  const json& v = field(item, name);
  if (!v.is_number()) throw SchemaError(std::string("\"") + name + "\" must be a number");
  return v.get<double>();
}

}  // namespace

JointState state_from_json(const json& doc, int expected_atoms) {
  if (!doc.is_array()) throw SchemaError("state must be a JSON array");
  int n_atoms = expected_atoms;
  if (n_atoms <= 0) {
    if (doc.empty()) throw SchemaError("cannot infer atom count from an empty state");
    const json& first = doc.front();
    if (!first.is_object() || !first.contains("atoms") || !first["atoms"].is_string()) {
      throw SchemaError("state entry must be an object with string \"atoms\"");
    }
    n_atoms = static_cast<int>(first["atoms"].get<std::string>().size());
  }
  if (n_atoms < 1 || n_atoms > 3) throw SchemaError("atom count must be 1, 2 or 3");

  JointState state(n_atoms);
  std::set<BasisLabel> seen;
  for (const json& item : doc) {
    if (!item.is_object()) throw SchemaError("state entry must be an object");
    const json& atoms = field(item, "atoms");
    const json& photons = field(item, "photons");
    if (!atoms.is_string()) throw SchemaError("\"atoms\" must be a string");
    if (!photons.is_number_integer()) throw SchemaError("\"photons\" must be an integer");
    BasisLabel label{atoms.get<std::string>(), photons.get<long>()};
    if (static_cast<int>(label.atoms.size()) != n_atoms) {
      throw SchemaError("label '" + label.atoms + "' does not match " + std::to_string(n_atoms) +
                        " atoms");
    }
    if (label.atoms.find_first_not_of("eg") != std::string::npos) {
      throw SchemaError("atomic letters must be 'e' or 'g'");
    }
    if (label.photons < 0) throw SchemaError("photon number must be nonnegative");
    if (!seen.insert(label).second) {
      throw SchemaError("duplicate label '" + label.atoms + "', " + std::to_string(label.photons));
    }
    state.add(label, Amplitude{number(item, "re"), number(item, "im")});
  }
  return state;
}

json record_to_json(const ResidualRecord& record) {
  json out{{"check", record.check}, {"n", record.n_atoms}, {"residual", record.residual}};
  out["K"] = record.K ? json(*record.K) : json(nullptr);
  return out;
}

}  // namespace tc
