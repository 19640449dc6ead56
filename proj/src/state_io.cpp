#include "rtangle/state_io.hpp"

#include <fstream>
#include <sstream>

namespace rtangle {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw StateFileError(where + ": " + what);
}

double read_real(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::complex<double> read_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2) fail(where, "expected [re, im]");
  return {read_real(v[0], where + "[0]"), read_real(v[1], where + "[1]")};
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

Ket8cd read_amplitudes(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 8) fail(where, "expected 8 amplitudes");
  Ket8cd out;
  for (int i = 0; i < 8; ++i) out(i) = read_complex(v[i], where + "[" + std::to_string(i) + "]");
  return out;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

WeightedEnsemble read_ensemble(const json& doc) {
  const json& members = field(doc, "members", "<root>");
  if (!members.is_array() || members.empty()) fail("members", "expected a non-empty array");
  std::vector<EnsembleMember> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string where = "members[" + std::to_string(i) + "]";
    const double w = read_real(field(members[i], "weight", where), where + ".weight");
    const Ket8cd amp = read_amplitudes(field(members[i], "amplitudes", where), where + ".amplitudes");
    try {
      out.push_back({w, PureState::normalized(amp)});
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return WeightedEnsemble(std::move(out));
}

DensityMatrix read_density(const json& doc) {
  const json& rows = field(doc, "matrix", "<root>");
  if (!rows.is_array() || rows.size() != 8) fail("matrix", "expected 8 rows");
  Matrix8cd rho;
  for (int r = 0; r < 8; ++r) {
    const std::string where = "matrix[" + std::to_string(r) + "]";
    if (!rows[r].is_array() || rows[r].size() != 8) fail(where, "expected 8 entries");
    for (int c = 0; c < 8; ++c) rho(r, c) = read_complex(rows[r][c], where + "[" + std::to_string(c) + "]");
  }
  return DensityMatrix(rho);
}

MeasurementSet read_kraus(const json& doc) {
  const json& target = field(doc, "target", "<root>");
  if (!target.is_string() || target.get<std::string>().size() != 1) fail("target", "expected \"A\", \"B\" or \"C\"");
  Qubit q;
  try {
    q = parse_qubit(target.get<std::string>()[0]);
  } catch (const ValidationError& e) {
    fail("target", e.what());
  }
  const json& ops = field(doc, "operators", "<root>");
  if (!ops.is_array() || ops.empty()) fail("operators", "expected a non-empty array");
  std::vector<LocalOperator> out;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    const std::string where = "operators[" + std::to_string(j) + "]";
    if (!ops[j].is_array() || ops[j].size() != 2) fail(where, "expected a 2x2 matrix");
    Eigen::Matrix2cd m;
    for (int r = 0; r < 2; ++r) {
      const std::string row = where + "[" + std::to_string(r) + "]";
      if (!ops[j][r].is_array() || ops[j][r].size() != 2) fail(row, "expected 2 entries");
      for (int c = 0; c < 2; ++c) m(r, c) = read_complex(ops[j][r][c], row + "[" + std::to_string(c) + "]");
    }
    out.emplace_back(m, q);
  }
  return MeasurementSet(std::move(out));
}

}  // namespace

StateFileContent parse_state(const json& doc) {
  if (!doc.is_object()) fail("<root>", "expected a JSON object");
  if (doc.contains("amplitudes")) return RawPureState{read_amplitudes(doc.at("amplitudes"), "amplitudes")};
  if (doc.contains("members")) return read_ensemble(doc);
  if (doc.contains("matrix")) return read_density(doc);
  if (doc.contains("operators")) return read_kraus(doc);
  fail("<root>", "expected one of \"amplitudes\", \"members\", \"matrix\", \"operators\"");
}

StateFileContent load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StateFileError(path.string() + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw StateFileError(path.string() + ": " + e.what());
  }
  try {
    return parse_state(doc);
  } catch (const StateFileError& e) {
    throw StateFileError(path.string() + ": " + e.what());
  }
}

json to_json(const PureState& psi) {
  json amps = json::array();
  for (int i = 0; i < 8; ++i) amps.push_back(complex_json(psi[i]));
  return {{"amplitudes", amps}};
}

json to_json(const WeightedEnsemble& ensemble) {
  json members = json::array();
  for (const auto& m : ensemble) {
    members.push_back({{"weight", m.weight}, {"amplitudes", to_json(m.state).at("amplitudes")}});
  }
  return {{"members", members}};
}

json to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (int r = 0; r < 8; ++r) {
    json row = json::array();
    for (int c = 0; c < 8; ++c) row.push_back(complex_json(rho(r, c)));
    rows.push_back(row);
  }
  return {{"matrix", rows}};
}

json to_json(const MeasurementSet& ms) {
  json ops = json::array();
  for (const auto& op : ms.operators()) {
    const auto& m = op.matrix();
    ops.push_back(json::array({json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                               json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})}));
  }
  return {{"target", std::string(1, qubit_label(ms.target()))}, {"operators", ops}};
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace rtangle
