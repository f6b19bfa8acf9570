// Copyright 2026 The midselect Authors
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

#include "midselect/circuit_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace midselect {

using nlohmann::json;

namespace {

json gate_to_json(const Gate& g) {
  json j;
  j["op"] = std::string(to_string(g.kind));
  j["wires"] = g.wires;
  if (!g.polarity.empty()) {
    json pol = json::array();
    for (bool b : g.polarity) pol.push_back(b);
    j["polarity"] = pol;
  }
  switch (g.kind) {
    case GateKind::ControlledPhase:
    case GateKind::XXPlusYY: j["angle"] = g.angle; break;
    case GateKind::U1q: {
      json m = json::array();
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) m.push_back({g.matrix(r, c).real(), g.matrix(r, c).imag()});
      }
      j["matrix"] = m;
      break;
    }
    default: break;
  }
  return j;
}

json instruction_to_json(const Instruction& inst) {
  struct Visitor {
    json operator()(const Gate& g) const { return gate_to_json(g); }
    json operator()(const MeasureZ& m) const { return {{"op", "measure_z"}, {"wires", {m.wire}}}; }
    json operator()(const MeasureX& m) const { return {{"op", "measure_x"}, {"wires", {m.wire}}}; }
    json operator()(const PostSelectZero& p) const {
      return {{"op", "postselect_zero"}, {"wires", p.wires}};
    }
    json operator()(const Reset& r) const { return {{"op", "reset"}, {"wires", {r.wire}}}; }
  };
  return std::visit(Visitor{}, inst);
}

Instruction instruction_from_json(const json& j) {
  const std::string op = j.at("op").get<std::string>();
  const auto wires = j.at("wires").get<std::vector<int>>();
  auto need = [&](std::size_t n) {
    if (wires.size() != n) throw std::invalid_argument("op '" + op + "' has wrong wire count");
  };
  auto split = [&]() -> std::pair<std::vector<int>, int> {
    if (wires.empty()) throw std::invalid_argument("op '" + op + "' needs a target");
    return {std::vector<int>(wires.begin(), wires.end() - 1), wires.back()};
  };
  std::vector<bool> pol;
  if (j.contains("polarity")) {
    for (const auto& b : j.at("polarity")) pol.push_back(b.is_boolean() ? b.get<bool>() : b.get<int>() != 0);
  }
  if (op == "u1q") {
    need(1);
    const auto& m = j.at("matrix");
    if (m.size() != 4) throw std::invalid_argument("u1q matrix needs 4 entries");
    Mat2 mat;
    for (int k = 0; k < 4; ++k) mat(k / 2, k % 2) = cplx(m[k].at(0).get<double>(), m[k].at(1).get<double>());
    return Gate::u1q(mat, wires[0]);
  }
  if (op == "cnot") {
    need(2);
    return Gate::cnot(wires[0], wires[1], pol.empty() ? true : pol.at(0));
  }
  if (op == "swap") {
    need(2);
    return Gate::swap(wires[0], wires[1]);
  }
  if (op == "mcx") {
    auto [c, t] = split();
    return Gate::mcx(std::move(c), t, std::move(pol));
  }
  if (op == "cphase") {
    auto [c, t] = split();
    return Gate::controlled_phase(std::move(c), t, j.at("angle").get<double>(), std::move(pol));
  }
  if (op == "xxpyy") {
    need(2);
    return Gate::xx_plus_yy(wires[0], wires[1], j.at("angle").get<double>());
  }
  if (op == "barrier") return Gate::barrier(wires);
  if (op == "measure_z") {
    need(1);
    return MeasureZ{wires[0]};
  }
  if (op == "measure_x") {
    need(1);
    return MeasureX{wires[0]};
  }
  if (op == "postselect_zero") return PostSelectZero{wires};
  if (op == "reset") {
    need(1);
    return Reset{wires[0]};
  }
  throw std::invalid_argument("unknown op '" + op + "'");
}

}  // namespace

std::string circuit_to_json(const Circuit& c, int indent) {
  json j;
  j["n_qubits"] = c.n_qubits();
  j["ancilla"] = c.ancilla();
  json insts = json::array();
  for (const auto& inst : c.instructions()) insts.push_back(instruction_to_json(inst));
  j["instructions"] = std::move(insts);
  return j.dump(indent);
}

Circuit circuit_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    Circuit c(j.at("n_qubits").get<int>());
    if (j.contains("ancilla")) {
      for (int a : j.at("ancilla").get<std::vector<int>>()) c.mark_ancilla(a);
    }
    for (const auto& inst : j.at("instructions")) c.add(instruction_from_json(inst));
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed circuit JSON: ") + e.what());
  }
}

void write_circuit(const Circuit& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << circuit_to_json(c, 1) << '\n';
}

Circuit read_circuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open circuit file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return circuit_from_json(ss.str());
}

}  // namespace midselect
