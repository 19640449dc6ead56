#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "rtangle/state.hpp"

namespace rtangle {

/// Malformed state file. `what()` names the offending field path,
/// e.g. "members[1].amplitudes[3]: expected [re, im]".
class StateFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed content of a state file. A pure state is read unvalidated so the
/// caller can decide between rejecting and renormalizing.
struct RawPureState {
  Ket8cd amplitudes;
};

using StateFileContent = std::variant<RawPureState, WeightedEnsemble, DensityMatrix, MeasurementSet>;

/// Dispatches on the top-level key: "amplitudes", "members", "matrix" or
/// "operators". Structural problems throw StateFileError; physical
/// constraints (norms, weights, PSD) throw ValidationError.
StateFileContent parse_state(const nlohmann::json& doc);
StateFileContent load_state_file(const std::filesystem::path& path);

nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const WeightedEnsemble& ensemble);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const MeasurementSet& ms);

/// Writes `doc` pretty-printed. Throws std::runtime_error if the path
/// cannot be opened.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace rtangle
